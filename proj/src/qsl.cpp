#include "ottofridge/qsl.hpp"

#include <algorithm>
#include <cmath>

#include "ottofridge/error.hpp"
#include "ottofridge/ramp.hpp"

namespace ottofridge {

void GaussianState::validate() const {
    if (!(var_x > 0.0) || !(var_p > 0.0)) {
        throw InvalidState("gaussian state: variances must be positive");
    }
    if (var_x * var_p < 0.25 * (1.0 - 1e-12)) {
        throw InvalidState("gaussian state: violates var_x * var_p >= 1/4");
    }
}

GaussianState thermal_state(double beta, double omega) {
    return adiabatic_final_state(beta, omega, omega);
}

GaussianState adiabatic_final_state(double beta, double omega_start, double omega_end) {
    if (!(beta > 0.0) || !(omega_start > 0.0) || !(omega_end > 0.0)) {
        throw InvalidParameter("gaussian state: beta and frequencies must be positive");
    }
    const double c = coth(0.5 * beta * omega_start);
    return {c / (2.0 * omega_end), 0.5 * omega_end * c};
}

double fidelity(const GaussianState& a, const GaussianState& b) {
    a.validate();
    b.validate();
    const double big = (a.var_x + b.var_x) * (a.var_p + b.var_p);
    // det V - 1/4 can round slightly negative for pure states
    const double ea = std::max(0.0, a.var_x * a.var_p - 0.25);
    const double eb = std::max(0.0, b.var_x * b.var_p - 0.25);
    const double small = 4.0 * ea * eb;
    const double f = 1.0 / (std::sqrt(big + small) - std::sqrt(small));
    return std::clamp(f, 0.0, 1.0);
}

double bures_angle(const GaussianState& a, const GaussianState& b) {
    return std::acos(std::sqrt(fidelity(a, b)));
}

double tau_qsl(double bures, double cost_avg) {
    if (!(cost_avg > 0.0)) {
        throw DegenerateBound("tau_qsl: time-averaged STA cost must be positive");
    }
    if (!(bures >= 0.0)) {
        throw InvalidParameter("tau_qsl: Bures angle must be non-negative");
    }
    return bures / cost_avg;
}

QslBounds performance_bounds(const CycleConfig& config, const QuadratureTolerances& tol) {
    config.validate();
    if (!cooling_condition(config)) {
        throw NotCooling("performance_bounds: cooling condition omega2/omega1 > beta1/beta2 fails");
    }

    QslBounds b{};
    b.bures_1 = bures_angle(thermal_state(config.beta1, config.omega1),
                            adiabatic_final_state(config.beta1, config.omega1, config.omega2));
    b.bures_3 = bures_angle(thermal_state(config.beta2, config.omega2),
                            adiabatic_final_state(config.beta2, config.omega2, config.omega1));
    if (!(b.bures_1 + b.bures_3 > 0.0)) {
        throw DegenerateBound("performance_bounds: zero total Bures angle");
    }

    const double cost1 =
        sta_cost_avg(Ramp::quintic(config.omega1, config.omega2, config.tau), config.beta1, tol);
    const double cost3 =
        sta_cost_avg(Ramp::quintic(config.omega2, config.omega1, config.tau), config.beta2, tol);
    b.tau_qsl_1 = tau_qsl(b.bures_1, cost1);
    b.tau_qsl_3 = tau_qsl(b.bures_3, cost3);

    const Heats h = heats(config, 1.0, 1.0);
    const Works w = works(config, 1.0, 1.0);
    b.cop_bound = h.q4 / (w.w1 + w.w3 + (b.bures_1 + b.bures_3) / config.tau);
    b.cooling_bound = h.q4 / (b.tau_qsl_1 + b.tau_qsl_3);
    b.chi_bound = b.cop_bound * b.cooling_bound;
    return b;
}

}  // namespace ottofridge
