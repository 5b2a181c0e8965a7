#pragma once

// Brute-force verification engine: the driven oscillator in a truncated Fock
// basis. Nothing here uses the classical-trajectory or Gaussian closed forms,
// so it can check them independently.

#include <Eigen/Dense>

#include "ottofridge/ramp.hpp"
#include "ottofridge/thermo.hpp"

namespace ottofridge::fock {

using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

/// N x N density matrix expressed in the Fock basis of an oscillator of
/// frequency omega_ref.
struct TruncatedDensityMatrix {
    double omega_ref;
    ComplexMatrix elements;

    int dim() const noexcept { return static_cast<int>(elements.rows()); }

    /// Hermitian to 1e-12, unit trace to 1e-10, eigenvalues >= -1e-10.
    /// Throws InvalidState otherwise.
    void validate() const;

    double trace() const { return elements.trace().real(); }
};

struct OscillatorOperators {
    ComplexMatrix x;
    ComplexMatrix p;
    RealMatrix x2;  ///< x^2 without truncation damage in the last level
    RealMatrix p2;
};

/// Ladder-operator construction of x, p and their squares in the Fock basis of omega_ref.
OscillatorOperators build_operators(int dim, double omega_ref);

/// H = p^2 / 2 + omega^2 x^2 / 2 in the truncated basis (real symmetric).
RealMatrix hamiltonian(const OscillatorOperators& ops, double omega);

/// Smallest dimension whose discarded Gibbs tail exp(-beta omega N) is below max_tail.
int required_dim(double beta, double omega, double max_tail = 1e-12);

/// Gibbs state diagonal in its own Fock basis, renormalised over dim levels.
/// Throws TruncationError (with a suggested dimension) if the discarded tail
/// exceeds max_tail.
TruncatedDensityMatrix thermal_density(double beta, double omega, int dim,
                                       double max_tail = 1e-12);

/// Gibbs state of the oscillator at omega, expressed in the Fock basis of
/// omega_ref by diagonalising the truncated Hamiltonian. No tail check; use
/// dimension doubling to judge convergence.
TruncatedDensityMatrix gibbs_density(double beta, double omega, int dim, double omega_ref);

/// Tr(rho H_omega), with H built in rho's basis.
double mean_energy(const TruncatedDensityMatrix& rho, double omega);

/// rho(tau) = U rho(0) U^dagger, U a time-ordered product of `steps`
/// midpoint-rule exponentials exp(-i H(t_mid) dt). Each exponential is applied
/// to the eigenvectors of rho(0) through a Chebyshev expansion, so it is exact
/// to rounding for the frozen Hamiltonian.
TruncatedDensityMatrix propagate(const Ramp& ramp, const TruncatedDensityMatrix& rho0, int steps);

/// Q* = 2 E_f / (omega_f coth(beta omega_i / 2)).
double qstar_from_energy(double final_energy, double beta, double omega_i, double omega_f);

/// (Tr sqrt(sqrt(a) b sqrt(a)))^2 via Hermitian eigendecompositions.
double matrix_fidelity(const TruncatedDensityMatrix& a, const TruncatedDensityMatrix& b);

/// S(a||b) = Tr(a ln a) - Tr(a ln b). Eigenvalues of b below 1e-14 (exact
/// zeros when b is diagonal) are treated as outside its support;
/// DivergentRelativeEntropy if a has weight above 1e-14 there.
double relative_entropy(const TruncatedDensityMatrix& a, const TruncatedDensityMatrix& b);

/// An oracle value with its convergence evidence.
struct OracleReport {
    double value = 0.0;
    double truncation_error = 0.0;  ///< |value(N) - value(N/2)|
    double step_error = 0.0;        ///< Richardson estimate |value(2M) - value(M)| / 3
    int dim_used = 0;
    int steps_used = 0;
    bool converged = false;
};

struct OracleOptions {
    int dim = 80;                ///< starting (or fixed) truncation
    bool auto_escalate = true;   ///< double dim until the thermal tail and halving check pass
    int max_dim = 1280;
    double tolerance = 5e-4;     ///< requested accuracy of the reported value
    int max_steps = 1 << 14;
};

/// Fock basis used by oracle_qstar: sqrt(w_i w_f) Q_sudden^(1/3), which balances
/// the initial state's position spread against the final state's momentum spread.
double oracle_reference_frequency(const Ramp& ramp);

/// Q* of the bare (non-STA) stroke from unitary propagation of the thermal
/// state (beta, omega_i). The discarded thermal tail exp(-beta w_i N) must stay
/// below 1e-12; truncation_error compares N against N/2 at equal step count.
OracleReport oracle_qstar(const Ramp& ramp, double beta, const OracleOptions& options = {});

/// A Gibbs state of the oscillator at `omega` with inverse temperature `beta`.
/// The adiabatic image of thermal(beta, w_s) at w_e is {beta w_s / w_e, w_e}.
struct GibbsSpec {
    double beta;
    double omega;
};

/// Matrix fidelity of two Gibbs states, both expressed in the Fock basis of
/// sqrt(omega_a omega_b).
OracleReport oracle_fidelity(const GibbsSpec& a, const GibbsSpec& b,
                             const OracleOptions& options = {});

/// S(rho_B || rho_C) + S(rho_D || rho_A) for the adiabatic (Q* = 1) cycle:
/// the entropy produced by the two isochores.
OracleReport oracle_isochore_entropy(const CycleConfig& config, const OracleOptions& options = {});

}  // namespace ottofridge::fock
