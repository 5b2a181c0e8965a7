#include "ottofridge/ramp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ottofridge/error.hpp"

namespace ottofridge {

namespace {

// Gauss-Kronrod on [a, b]; throws when the error estimate misses both tolerances.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureTolerances& tol, const char* what) {
    double error = 0.0;
    double l1 = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, 30, 0.1 * tol.rel, &error, &l1);
    if (error > std::max(tol.abs, tol.rel * l1)) {
        throw NumericalAccuracyError(std::string(what) + ": quadrature did not converge", value,
                                     error);
    }
    return value;
}

}  // namespace

Ramp Ramp::quintic(double omega_i, double omega_f, double tau) {
    if (!(omega_i > 0.0) || !(omega_f > 0.0) || !(tau > 0.0)) {
        throw InvalidParameter("quintic ramp: omega_i, omega_f and tau must be positive");
    }
    return Ramp(omega_i, omega_f, tau, RampShape::quintic);
}

double Ramp::omega(double t) const noexcept {
    const double s = t / tau_;
    const double s3 = s * s * s;
    return omega_i_ + (omega_f_ - omega_i_) * s3 * (10.0 + s * (-15.0 + 6.0 * s));
}

double Ramp::d_omega(double t) const noexcept {
    const double s = t / tau_;
    const double s2 = s * s;
    return (omega_f_ - omega_i_) * 30.0 * s2 * (1.0 - s) * (1.0 - s) / tau_;
}

double Ramp::dd_omega(double t) const noexcept {
    const double s = t / tau_;
    return (omega_f_ - omega_i_) * 60.0 * s * (1.0 - s) * (1.0 - 2.0 * s) / (tau_ * tau_);
}

LcdSample evaluate(const Ramp& ramp, double t) {
    if (!(t >= 0.0 && t <= ramp.tau())) {
        throw DomainError("ramp evaluate: t outside [0, tau]");
    }
    LcdSample out{};
    out.t = t;
    out.omega = ramp.omega(t);
    out.domega = ramp.d_omega(t);
    out.ddomega = ramp.dd_omega(t);
    const double w = out.omega;
    const double w2 = w * w;
    const double dw2 = out.domega * out.domega;
    out.omega_lcd_sq = w2 - 3.0 * dw2 / (4.0 * w2) + out.ddomega / (2.0 * w);
    out.qstar_lcd = 1.0 - dw2 / (4.0 * w2 * w2) + out.ddomega / (4.0 * w2 * w);
    return out;
}

LcdMinimum min_lcd_frequency_sq(const Ramp& ramp, int grid_points) {
    if (grid_points < 2) {
        throw InvalidParameter("min_lcd_frequency_sq: need at least two grid points");
    }
    const double tau = ramp.tau();
    const double h = tau / (grid_points - 1);
    auto f = [&](double t) { return evaluate(ramp, std::clamp(t, 0.0, tau)).omega_lcd_sq; };

    int best = 0;
    double best_value = f(0.0);
    for (int k = 1; k < grid_points; ++k) {
        const double v = f(k == grid_points - 1 ? tau : k * h);
        if (v < best_value) {
            best_value = v;
            best = k;
        }
    }

    // golden-section refinement inside the two neighbouring cells
    double a = std::max(0.0, (best - 1) * h);
    double b = std::min(tau, (best + 1) * h);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 100 && (b - a) > 1e-14 * std::max(1.0, tau); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const double t_ref = 0.5 * (a + b);
    const double v_ref = f(t_ref);
    if (v_ref < best_value) {
        return {v_ref, t_ref};
    }
    return {best_value, best == grid_points - 1 ? tau : best * h};
}

double sta_cost_instant(const Ramp& ramp, double t, double beta) {
    if (!(beta > 0.0)) {
        throw InvalidParameter("sta_cost_instant: beta must be positive");
    }
    const LcdSample s = evaluate(ramp, t);
    return 0.5 * s.omega * (s.qstar_lcd - 1.0) * coth(0.5 * beta * ramp.omega_i());
}

StaCostRoutes sta_cost_routes(const Ramp& ramp, double beta, const QuadratureTolerances& tol) {
    if (!(beta > 0.0)) {
        throw InvalidParameter("sta_cost_avg: beta must be positive");
    }
    if (ramp.is_constant()) {
        return {0.0, 0.0};
    }
    const double tau = ramp.tau();
    const double c = coth(0.5 * beta * ramp.omega_i());

    const double direct = integrate(
        [&](double t) {
            const double w = ramp.omega(t);
            const double dw = ramp.d_omega(t);
            const double ddw = ramp.dd_omega(t);
            return 0.5 * w * (-dw * dw / (4.0 * w * w * w * w) + ddw / (4.0 * w * w * w));
        },
        0.0, tau, tol, "sta_cost_avg (direct)");

    const double by_parts = integrate(
        [&](double t) {
            const double w = ramp.omega(t);
            const double dw = ramp.d_omega(t);
            return dw * dw / (4.0 * w * w * w);
        },
        0.0, tau, tol, "sta_cost_avg (by parts)");

    return {c * direct / tau, 0.5 * c * by_parts / tau};
}

double sta_cost_avg(const Ramp& ramp, double beta, const QuadratureTolerances& tol) {
    const StaCostRoutes r = sta_cost_routes(ramp, beta, tol);
    const double scale = std::max(std::abs(r.direct), std::abs(r.by_parts));
    if (std::abs(r.direct - r.by_parts) > 1e-8 * scale) {
        throw NumericalAccuracyError("sta_cost_avg: direct and by-parts routes disagree", r.direct,
                                     r.by_parts);
    }
    return r.by_parts;
}

}  // namespace ottofridge
