#include "ottofridge/special.hpp"

#include <cmath>

#include "ottofridge/error.hpp"

namespace ottofridge {

double coth(double x) {
    if (!(x > 0.0)) {
        throw InvalidParameter("coth: argument must be positive");
    }
    if (x < 1e-4) {
        const double x2 = x * x;
        return 1.0 / x + x / 3.0 - x * x2 / 45.0;
    }
    // coth(x) = 1 + 2 / (exp(2x) - 1)
    return 1.0 + 2.0 / std::expm1(2.0 * x);
}

}  // namespace ottofridge
