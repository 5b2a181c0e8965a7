#pragma once

namespace ottofridge {

/// Hyperbolic cotangent for x > 0. Uses the Laurent series below 1e-4 and an
/// expm1 form elsewhere so that small arguments (x ~ 0.05) keep full precision.
double coth(double x);

/// Tolerances for the adaptive classical-oscillator integration.
struct OdeTolerances {
    double rtol = 1e-10;
    double atol = 1e-12;
};

/// Tolerances for adaptive Gauss-Kronrod quadrature.
struct QuadratureTolerances {
    double rel = 1e-10;
    double abs = 1e-12;
};

}  // namespace ottofridge
