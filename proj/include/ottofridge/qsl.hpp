#pragma once

#include "ottofridge/special.hpp"
#include "ottofridge/thermo.hpp"

namespace ottofridge {

/// Zero-mean single-mode Gaussian state with diagonal covariance.
struct GaussianState {
    double var_x;
    double var_p;

    /// Positive variances and var_x var_p >= 1/4 (up to rounding).
    void validate() const;
};

/// Thermal state of an oscillator at frequency omega.
GaussianState thermal_state(double beta, double omega);

/// Adiabatic image at omega_end of the thermal state (beta, omega_start): same
/// occupation distribution, new frequency.
GaussianState adiabatic_final_state(double beta, double omega_start, double omega_end);

/// Uhlmann transition probability F = (Tr sqrt(sqrt(a) b sqrt(a)))^2 via the
/// single-mode closed form F = 1 / (sqrt(D + d) - sqrt(d)), D = det(Va + Vb),
/// d = 4 (det Va - 1/4)(det Vb - 1/4).
double fidelity(const GaussianState& a, const GaussianState& b);

/// arccos(sqrt(F)) in [0, pi/2].
double bures_angle(const GaussianState& a, const GaussianState& b);

/// Margolus-Levitin-type time L / <H_STA>_tau. Throws DegenerateBound if cost_avg <= 0.
double tau_qsl(double bures, double cost_avg);

struct QslBounds {
    double tau_qsl_1;
    double tau_qsl_3;
    double bures_1;
    double bures_3;
    double cop_bound;
    double cooling_bound;
    double chi_bound;
};

/// Speed-limit bounds on the STA refrigerator. Requires the cooling condition
/// (NotCooling otherwise) and omega1 != omega2 (DegenerateBound).
QslBounds performance_bounds(const CycleConfig& config, const QuadratureTolerances& tol = {});

}  // namespace ottofridge
