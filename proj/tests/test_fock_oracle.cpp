#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "ottofridge/dynamics.hpp"
#include "ottofridge/error.hpp"
#include "ottofridge/fock_oracle.hpp"

using namespace ottofridge;
using namespace ottofridge::fock;

namespace {

// Thermal entropy of an oscillator: x / tanh(x) - ln(2 sinh x), x = beta w / 2.
double thermal_entropy(double beta, double w) {
    const double x = 0.5 * beta * w;
    return x * oracle::coth(x) - std::log(2.0 * std::sinh(x));
}

TruncatedDensityMatrix projector(int dim, int level, double omega_ref) {
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    m(level, level) = 1.0;
    return {omega_ref, m};
}

}  // namespace

TEST_CASE("ladder-operator construction") {
    const int n = 30;
    const double w = 0.7;
    const OscillatorOperators ops = build_operators(n, w);
    const ComplexMatrix comm = ops.x * ops.p - ops.p * ops.x;
    const ComplexMatrix block = comm.topLeftCorner(n - 1, n - 1);
    CHECK((block - std::complex<double>(0, 1) * ComplexMatrix::Identity(n - 1, n - 1)).cwiseAbs().maxCoeff() <= 1e-12);

    const RealMatrix h = hamiltonian(ops, w);
    RealMatrix expected = RealMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) expected(k, k) = w * (k + 0.5);
    CHECK((h - expected).cwiseAbs().maxCoeff() <= 1e-12);

    CHECK(ops.x2(0, 0) == doctest::Approx(1.0 / (2 * w)).epsilon(1e-15));
    CHECK((ops.x * ops.x).real()(0, 0) == doctest::Approx(1.0 / (2 * w)).epsilon(1e-15));
    // away from the truncation edge the exact squares equal the matrix products
    CHECK(((ops.x * ops.x).real() - ops.x2).topLeftCorner(n - 1, n - 1).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(((ops.p * ops.p).real() - ops.p2).topLeftCorner(n - 1, n - 1).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK_THROWS_AS(build_operators(1, 1.0), InvalidParameter);
}

TEST_CASE("thermal density matrices") {
    const TruncatedDensityMatrix ground = thermal_density(1e6, 1.0, 8);
    CHECK(ground.elements(0, 0).real() == 1.0);
    CHECK(ground.trace() == doctest::Approx(1.0).epsilon(1e-15));

    CHECK(required_dim(1.0, 0.1) == 277);
    const TruncatedDensityMatrix rho = thermal_density(1.0, 0.1, 320);
    CHECK_NOTHROW(rho.validate());
    CHECK(mean_energy(rho, 0.1) == doctest::Approx(oracle::thermal_energy(1.0, 0.1)).epsilon(1e-10));

    try {
        thermal_density(1.0, 0.1, 80);
        FAIL("expected TruncationError");
    } catch (const TruncationError& e) {
        CHECK(e.suggested_dim() == 277);
    }

    // a Gibbs state assembled in a foreign basis carries the same energy
    const TruncatedDensityMatrix foreign = gibbs_density(2.0, 0.5, 200, 0.3);
    CHECK_NOTHROW(foreign.validate());
    CHECK(mean_energy(foreign, 0.5) == doctest::Approx(oracle::thermal_energy(2.0, 0.5)).epsilon(1e-10));
}

TEST_CASE("density-matrix validation") {
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    m(0, 0) = 1.0;
    m(0, 1) = std::complex<double>(0, 0.1);
    CHECK_THROWS_AS((TruncatedDensityMatrix{1.0, m}.validate()), InvalidState);
    m(0, 1) = 0.0;
    m(0, 0) = 0.9;
    CHECK_THROWS_AS((TruncatedDensityMatrix{1.0, m}.validate()), InvalidState);
    m(0, 0) = 1.2;
    m(1, 1) = -0.2;
    CHECK_THROWS_AS((TruncatedDensityMatrix{1.0, m}.validate()), InvalidState);
}

TEST_CASE("propagation conserves trace, Hermiticity and static energy") {
    const TruncatedDensityMatrix rho0 = thermal_density(2.0, 0.5, 80);
    const TruncatedDensityMatrix still = propagate(Ramp::quintic(0.5, 0.5, 7.0), rho0, 50);
    CHECK(mean_energy(still, 0.5) == doctest::Approx(mean_energy(rho0, 0.5)).epsilon(1e-10));

    const TruncatedDensityMatrix moved = propagate(Ramp::quintic(0.5, 1.0, 3.0), rho0, 64);
    CHECK(moved.trace() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK((moved.elements - moved.elements.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK_NOTHROW(moved.validate());
    CHECK_THROWS_AS(propagate(Ramp::quintic(0.5, 1.0, 3.0), rho0, 0), InvalidParameter);
}

TEST_CASE("Q* from the final energy") {
    CHECK(qstar_from_energy(oracle::thermal_energy(1.0, 0.1) * 5.0, 1.0, 0.1, 0.5) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(qstar_from_energy(3.0, 1.0, 0.1, 0.5) > qstar_from_energy(2.0, 1.0, 0.1, 0.5));

    // an almost instantaneous quench reproduces the sudden-limit value
    const Ramp quench = Ramp::quintic(1.0, 5.0, 1e-4);
    const TruncatedDensityMatrix rho = propagate(quench, gibbs_density(2.0, 1.0, 120, std::sqrt(5.0)), 4);
    const double q = qstar_from_energy(mean_energy(rho, 5.0), 2.0, 1.0, 5.0);
    CHECK(q == doctest::Approx(2.6).epsilon(0.01));
}

TEST_CASE("matrix fidelity") {
    const TruncatedDensityMatrix a = gibbs_density(1.3, 0.4, 100, 0.6);
    CHECK(matrix_fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-10));

    const double w = 0.5;
    const TruncatedDensityMatrix v1 = gibbs_density(1e6, w, 120, 2 * w);
    const TruncatedDensityMatrix v4 = gibbs_density(1e6, 4 * w, 120, 2 * w);
    CHECK(matrix_fidelity(v1, v4) == doctest::Approx(0.8).epsilon(1e-4));

    CHECK(matrix_fidelity(projector(6, 0, 1.0), projector(6, 1, 1.0)) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("relative entropy") {
    const TruncatedDensityMatrix a = thermal_density(0.8, 0.5, 200);
    CHECK(relative_entropy(a, a) == doctest::Approx(0.0).epsilon(1e-12));

    // S(b || b') = b' (E(b) - E(b')) - (S(b) - S(b')) for thermal states at one frequency
    for (auto [b, bp] : {std::pair{0.8, 1.7}, std::pair{2.0, 0.5}, std::pair{0.3, 0.31}}) {
        const double w = 0.5;
        const double closed = bp * (oracle::thermal_energy(b, w) - oracle::thermal_energy(bp, w)) -
                              (thermal_entropy(b, w) - thermal_entropy(bp, w));
        const double got = relative_entropy(thermal_density(b, w, 400), thermal_density(bp, w, 400));
        CHECK(got == doctest::Approx(closed).epsilon(1e-6));
    }

    CHECK_THROWS_AS(relative_entropy(projector(5, 1, 1.0), projector(5, 0, 1.0)), DivergentRelativeEntropy);
    CHECK_THROWS_AS(relative_entropy(projector(5, 1, 1.0), projector(6, 1, 1.0)), InvalidParameter);
}

TEST_CASE("isochore relative entropies reproduce the entropy production") {
    const CycleConfig k{0.1, 0.5, 1.0, 0.75, 1.0};
    const OracleReport r = oracle_isochore_entropy(k, {80, true, 1280, 1e-5});
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(entropy_production(k, 1.0, 1.0)).epsilon(1e-4));
}

TEST_CASE("oracle fidelity on stroke endpoints") {
    const OracleReport r = oracle_fidelity({1.0, 0.1}, {0.2, 0.5}, {80, true, 1280, 1e-5});
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(0.5566598661).epsilon(1e-4));
}

TEST_CASE("oracle Q* cross-validates the classical trajectory at tau = 5") {
    const Ramp r = Ramp::quintic(0.1, 0.5, 5.0);
    const OracleReport rep = oracle_qstar(r, 1.0);
    CHECK(rep.converged);
    CHECK(rep.dim_used >= 80);
    CHECK(rep.value == doctest::Approx(qstar(r).qstar).epsilon(1e-3));
    CHECK(std::abs(rep.value - qstar(r).qstar) <= 1e-3);
}

TEST_CASE("oracle reports truncation instead of guessing") {
    OracleOptions fixed;
    fixed.dim = 4;
    fixed.auto_escalate = false;
    const OracleReport r = oracle_qstar(Ramp::quintic(0.1, 0.5, 1.0), 1.0, fixed);
    CHECK_FALSE(r.converged);
    CHECK(std::isnan(r.value));

    const OracleReport flat = oracle_qstar(Ramp::quintic(0.5, 0.5, 3.0), 1.0);
    CHECK(flat.converged);
    CHECK(flat.value == doctest::Approx(1.0).epsilon(1e-9));
}
