#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ottofridge/error.hpp"
#include "ottofridge/ramp.hpp"
#include "ottofridge/special.hpp"

using namespace ottofridge;

TEST_CASE("coth matches cosh/sinh and its small-argument series") {
    for (double x : {1e-8, 3e-5, 9.9e-5, 1e-4, 1e-3, 0.05, 0.1875, 1.0, 5.0, 30.0}) {
        CHECK(coth(x) == doctest::Approx(oracle::coth(x)).epsilon(1e-13));
    }
    CHECK(coth(800.0) == 1.0);
    CHECK_THROWS_AS(coth(0.0), InvalidParameter);
    CHECK_THROWS_AS(coth(-1.0), InvalidParameter);
}

TEST_CASE("quintic ramp boundary values and midpoint") {
    const Ramp r = Ramp::quintic(0.1, 0.5, 10.0);
    CHECK(r.omega(0.0) == 0.1);
    CHECK(r.omega(5.0) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(r.omega(10.0) == doctest::Approx(0.5).epsilon(1e-15));
    for (double t : {0.0, 10.0}) {
        CHECK(r.d_omega(t) == 0.0);
        CHECK(r.dd_omega(t) == 0.0);
    }
    CHECK_FALSE(r.is_constant());
    CHECK(r.shape() == RampShape::quintic);
}

TEST_CASE("ramp factory rejects non-positive arguments") {
    CHECK_THROWS_AS(Ramp::quintic(0.0, 0.5, 1.0), InvalidParameter);
    CHECK_THROWS_AS(Ramp::quintic(0.1, -0.5, 1.0), InvalidParameter);
    CHECK_THROWS_AS(Ramp::quintic(0.1, 0.5, 0.0), InvalidParameter);
    CHECK_THROWS_AS(Ramp::quintic(0.1, 0.5, std::nan("")), InvalidParameter);
}

TEST_CASE("ramp derivatives agree with finite differences") {
    const Ramp r = Ramp::quintic(0.1, 0.5, 10.0);
    auto w = [&](double t) { return r.omega(t); };
    auto dw = [&](double t) { return r.d_omega(t); };
    for (double t : {0.7, 2.5, 5.0, 7.3, 9.1}) {
        CHECK(r.d_omega(t) == doctest::Approx(oracle::central_diff(w, t, 1e-3)).epsilon(1e-9));
        CHECK(r.dd_omega(t) == doctest::Approx(oracle::central_diff(dw, t, 1e-3)).epsilon(1e-8));
    }
}

TEST_CASE("LCD sample at the endpoints and for a constant ramp") {
    const Ramp r = Ramp::quintic(0.1, 0.5, 10.0);
    const LcdSample s0 = evaluate(r, 0.0);
    CHECK(s0.qstar_lcd == 1.0);
    CHECK(s0.omega_lcd_sq == doctest::Approx(0.01).epsilon(1e-15));

    const Ramp flat = Ramp::quintic(0.3, 0.3, 4.0);
    for (double t : {0.0, 1.0, 2.9, 4.0}) {
        const LcdSample s = evaluate(flat, t);
        CHECK(s.qstar_lcd == 1.0);
        CHECK(s.omega_lcd_sq == doctest::Approx(0.09).epsilon(1e-15));
    }
    CHECK_THROWS_AS(evaluate(r, -1e-9), DomainError);
    CHECK_THROWS_AS(evaluate(r, 10.0 + 1e-9), DomainError);
}

TEST_CASE("LCD quantities at mid-ramp match a finite-difference oracle") {
    const oracle::Quintic q{0.1, 0.5, 10.0};
    const Ramp r = Ramp::quintic(0.1, 0.5, 10.0);
    auto w = [&](double t) { return q.w(t); };
    const double t = 5.0;
    const double om = q.w(t);
    const double d1 = oracle::central_diff(w, t, 1e-3);
    const double d2 = oracle::second_diff(w, t, 1e-2);
    const double q_ref = 1.0 - d1 * d1 / (4 * std::pow(om, 4)) + d2 / (4 * std::pow(om, 3));
    const double o_ref = om * om - 3 * d1 * d1 / (4 * om * om) + d2 / (2 * om);
    const LcdSample s = evaluate(r, t);
    CHECK(std::abs(s.qstar_lcd - q_ref) <= 1e-6);
    CHECK(std::abs(s.omega_lcd_sq - o_ref) <= 1e-6);
}

TEST_CASE("minimum LCD frequency: slow ramps confine, fast ramps invert") {
    const LcdMinimum flat = min_lcd_frequency_sq(Ramp::quintic(0.2, 0.2, 3.0));
    CHECK(flat.value == doctest::Approx(0.04).epsilon(1e-14));

    const LcdMinimum slow = min_lcd_frequency_sq(Ramp::quintic(0.1, 0.5, 10.0));
    CHECK(slow.value > 0.0);
    // frozen: 1e6-point scan refined by Brent minimisation, computed offline
    CHECK(slow.value == doctest::Approx(0.0029408463603339).epsilon(1e-9));

    const LcdMinimum fast = min_lcd_frequency_sq(Ramp::quintic(0.1, 0.5, 0.1));
    CHECK(fast.value < 0.0);

    // refinement never does worse than a plain dense scan
    const Ramp r = Ramp::quintic(0.1, 0.5, 0.1);
    double scan = 1e300;
    for (int i = 0; i <= 200000; ++i) scan = std::min(scan, evaluate(r, 0.1 * i / 200000).omega_lcd_sq);
    CHECK(fast.value <= scan + 1e-9 * std::abs(scan));
    CHECK(evaluate(r, fast.time).omega_lcd_sq == doctest::Approx(fast.value));
}

TEST_CASE("STA cost vanishes at the stroke endpoints and for constant ramps") {
    const Ramp r = Ramp::quintic(0.1, 0.5, 10.0);
    CHECK(sta_cost_instant(r, 0.0, 1.0) == 0.0);
    CHECK(std::abs(sta_cost_instant(r, 10.0, 1.0)) <= 1e-18);
    const Ramp flat = Ramp::quintic(0.4, 0.4, 2.0);
    CHECK(sta_cost_instant(flat, 1.3, 1.0) == 0.0);
    CHECK(sta_cost_avg(flat, 1.0) == 0.0);
}

TEST_CASE("time-averaged STA cost matches a Gauss-Legendre oracle") {
    const oracle::GaussLegendre gl(64);
    auto reference = [&](double wi, double wf, double tau, double beta) {
        // (coth / 2) * (1 / tau^2) * int_0^1 w'(s)^2 / (4 w(s)^3) ds, w' = dw/ds
        const oracle::Quintic unit{wi, wf, 1.0};
        auto integrand = [&](double s) {
            const double d = oracle::central_diff([&](double u) { return unit.w(u); }, s, 1e-4);
            return d * d / (4 * std::pow(unit.w(s), 3));
        };
        auto exact_integrand = [&](double s) {
            const double d = 30 * (wf - wi) * s * s * (1 - s) * (1 - s);
            return d * d / (4 * std::pow(unit.w(s), 3));
        };
        const double k_fd = gl.integrate(integrand, 0.0, 1.0);
        const double k = gl.integrate(exact_integrand, 0.0, 1.0);
        REQUIRE(k_fd == doctest::Approx(k).epsilon(1e-7));
        return 0.5 * oracle::coth(0.5 * beta * wi) * k / (tau * tau);
    };

    const double got = sta_cost_avg(Ramp::quintic(0.1, 0.5, 10.0), 1.0);
    CHECK(got == doctest::Approx(reference(0.1, 0.5, 10.0, 1.0)).epsilon(1e-9));
    // frozen: K = tau^2 * cost for (0.1, 0.5), beta = 1, from 30-digit quadrature
    CHECK(got * 100.0 == doctest::Approx(49.1322932162021).epsilon(1e-9));

    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> w(0.05, 3.0), t(0.2, 50.0), b(0.1, 5.0);
    for (int i = 0; i < 40; ++i) {
        const double wi = w(rng), wf = w(rng), tau = t(rng), beta = b(rng);
        CHECK(sta_cost_avg(Ramp::quintic(wi, wf, tau), beta) ==
              doctest::Approx(reference(wi, wf, tau, beta)).epsilon(1e-8));
    }
}

TEST_CASE("STA cost: quadrature routes agree, 1/tau^2 scaling, positivity") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> w(0.05, 3.0), t(0.1, 60.0), b(0.1, 5.0);
    for (int i = 0; i < 50; ++i) {
        const double wi = w(rng), wf = w(rng), tau = t(rng), beta = b(rng);
        const Ramp r = Ramp::quintic(wi, wf, tau);
        const StaCostRoutes routes = sta_cost_routes(r, beta);
        CHECK(std::abs(routes.direct - routes.by_parts) <= 1e-8 * std::abs(routes.by_parts));
        const double c1 = sta_cost_avg(r, beta);
        const double c2 = sta_cost_avg(Ramp::quintic(wi, wf, 2 * tau), beta);
        CHECK(std::abs(4 * c2 - c1) <= 1e-6 * c1);
        CHECK(c1 > 0.0);
    }
}

TEST_CASE("instantaneous cost integrates to the averaged cost") {
    const Ramp r = Ramp::quintic(0.5, 0.1, 3.0);
    const oracle::GaussLegendre gl(64);
    const double avg = gl.integrate([&](double t) { return sta_cost_instant(r, t, 0.75); }, 0.0, 3.0, 16) / 3.0;
    CHECK(sta_cost_avg(r, 0.75) == doctest::Approx(avg).epsilon(1e-10));
}
