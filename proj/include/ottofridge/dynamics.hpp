#pragma once

#include "ottofridge/ramp.hpp"
#include "ottofridge/special.hpp"

namespace ottofridge {

/// Final values of the two fundamental solutions of u'' + omega(t)^2 u = 0,
/// X(0) = 1, X'(0) = 0 and Y(0) = 0, Y'(0) = 1.
struct ClassicalPair {
    double X;
    double dX;
    double Y;
    double dY;
    double wronskian_drift;  ///< |X Y' - X' Y - 1| at t = tau
    long solver_steps;
};

/// Adaptive Runge-Kutta-Fehlberg 7(8) integration over [0, tau].
/// Tolerances must lie in (0, 1e-2]. Throws StiffnessError if the step size collapses.
ClassicalPair integrate_classical(const Ramp& ramp, const OdeTolerances& tol = {});

struct AdiabaticityResult {
    double qstar;
    long solver_steps;
    double wronskian_drift;
};

/// Husimi adiabaticity parameter of a stroke,
///   Q* = [w_i^2 (w_f^2 Y^2 + Y'^2) + (w_f^2 X^2 + X'^2)] / (2 w_i w_f).
/// A constant ramp returns exactly 1 without integrating.
AdiabaticityResult qstar(const Ramp& ramp, const OdeTolerances& tol = {});

/// Sudden-quench limit (w_i^2 + w_f^2) / (2 w_i w_f).
double qstar_sudden(double omega_i, double omega_f);

}  // namespace ottofridge
