#include "ottofridge/dynamics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

#include "ottofridge/error.hpp"

namespace ottofridge {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<double, 4>;  // X, X', Y, Y'

void check_tolerance(double v, const char* name) {
    if (!(v > 0.0 && v <= 1e-2)) {
        throw InvalidParameter(std::string("integrate_classical: ") + name + " must lie in (0, 1e-2]");
    }
}

}  // namespace

ClassicalPair integrate_classical(const Ramp& ramp, const OdeTolerances& tol) {
    check_tolerance(tol.rtol, "rtol");
    check_tolerance(tol.atol, "atol");

    auto rhs = [&ramp](const State& y, State& dy, double t) {
        const double w = ramp.omega(t);
        const double w2 = w * w;
        dy[0] = y[1];
        dy[1] = -w2 * y[0];
        dy[2] = y[3];
        dy[3] = -w2 * y[2];
    };

    State y{1.0, 0.0, 0.0, 1.0};
    const double tau = ramp.tau();
    // initial step: a small fraction of both the ramp time and the fastest period
    const double w_max = std::max(ramp.omega_i(), ramp.omega_f());
    const double dt0 = std::min(tau, 1.0 / w_max) * 1e-3;

    auto stepper = odeint::make_controlled(tol.atol, tol.rtol,
                                           odeint::runge_kutta_fehlberg78<State>());
    long steps = 0;
    try {
        steps = static_cast<long>(odeint::integrate_adaptive(
            stepper, rhs, y, 0.0, tau, dt0));
    } catch (const odeint::step_adjustment_error& e) {
        throw StiffnessError(std::string("integrate_classical: ") + e.what());
    } catch (const odeint::no_progress_error& e) {
        throw StiffnessError(std::string("integrate_classical: ") + e.what());
    }

    ClassicalPair out{};
    out.X = y[0];
    out.dX = y[1];
    out.Y = y[2];
    out.dY = y[3];
    out.wronskian_drift = std::abs(y[0] * y[3] - y[1] * y[2] - 1.0);
    out.solver_steps = steps;
    return out;
}

AdiabaticityResult qstar(const Ramp& ramp, const OdeTolerances& tol) {
    if (ramp.is_constant()) {
        return {1.0, 0, 0.0};
    }
    const ClassicalPair c = integrate_classical(ramp, tol);
    const double wi = ramp.omega_i();
    const double wf = ramp.omega_f();
    const double wf2 = wf * wf;
    const double q = (wi * wi * (wf2 * c.Y * c.Y + c.dY * c.dY) + (wf2 * c.X * c.X + c.dX * c.dX)) /
                     (2.0 * wi * wf);
    return {q, c.solver_steps, c.wronskian_drift};
}

double qstar_sudden(double omega_i, double omega_f) {
    if (!(omega_i > 0.0) || !(omega_f > 0.0)) {
        throw InvalidParameter("qstar_sudden: frequencies must be positive");
    }
    return (omega_i * omega_i + omega_f * omega_f) / (2.0 * omega_i * omega_f);
}

}  // namespace ottofridge
