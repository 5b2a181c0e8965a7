#include "ottofridge/thermo.hpp"

#include <cmath>

#include "ottofridge/dynamics.hpp"
#include "ottofridge/error.hpp"
#include "ottofridge/ramp.hpp"

namespace ottofridge {

namespace {

void require_qstar(double q1, double q3) {
    if (!(q1 >= 1.0) || !(q3 >= 1.0)) {
        throw InvalidParameter("Q* must be >= 1");
    }
}

}  // namespace

void CycleConfig::validate() const {
    if (!(omega1 > 0.0) || !(omega2 > 0.0) || !(beta1 > 0.0) || !(beta2 > 0.0) || !(tau > 0.0)) {
        throw InvalidParameter("cycle: all parameters must be positive");
    }
    if (!(omega2 > omega1)) {
        throw InvalidParameter("cycle: omega2 must exceed omega1");
    }
    if (!(beta1 > beta2)) {
        throw InvalidParameter("cycle: beta1 must exceed beta2 (cold bath colder)");
    }
}

std::string_view to_string(Mode m) noexcept {
    switch (m) {
        case Mode::NA: return "NA";
        case Mode::STA: return "STA";
        case Mode::AD: return "AD";
    }
    return "?";
}

Heats heats(const CycleConfig& c, double qstar1, double qstar3) {
    require_qstar(qstar1, qstar3);
    const double c1 = coth(c.x1());
    const double c2 = coth(c.x2());
    return {0.5 * c.omega2 * (c2 - qstar1 * c1), 0.5 * c.omega1 * (c1 - qstar3 * c2)};
}

Works works(const CycleConfig& c, double qstar1, double qstar3) {
    require_qstar(qstar1, qstar3);
    const double c1 = coth(c.x1());
    const double c2 = coth(c.x2());
    return {0.5 * (c.omega2 * qstar1 - c.omega1) * c1, 0.5 * (c.omega1 * qstar3 - c.omega2) * c2};
}

double cop_nonadiabatic(const CycleConfig& c, double qstar1, double qstar3) {
    const Heats h = heats(c, qstar1, qstar3);
    const Works w = works(c, qstar1, qstar3);
    if (!(h.q4 > 0.0)) {
        throw NotCooling("cop: Q4 <= 0, the cycle does not cool");
    }
    const double total = w.w1 + w.w3;
    if (!(total > 0.0)) {
        throw NotRefrigerator("cop: total work <= 0");
    }
    return h.q4 / total;
}

double cop_adiabatic(const CycleConfig& c) {
    if (!(c.omega1 > 0.0) || !(c.omega2 > c.omega1)) {
        throw InvalidParameter("cop_adiabatic: requires omega2 > omega1 > 0");
    }
    return c.omega1 / (c.omega2 - c.omega1);
}

double cop_sta(const CycleConfig& c, double cost1, double cost3) {
    if (!(cost1 >= 0.0) || !(cost3 >= 0.0)) {
        throw InvalidParameter("cop_sta: STA costs must be non-negative");
    }
    const Heats h = heats(c, 1.0, 1.0);
    const Works w = works(c, 1.0, 1.0);
    if (!(h.q4 > 0.0)) {
        throw NotCooling("cop_sta: adiabatic Q4 <= 0, the cycle does not cool");
    }
    const double total = w.w1 + w.w3 + cost1 + cost3;
    if (!(total > 0.0)) {
        throw NotRefrigerator("cop_sta: total energy input <= 0");
    }
    return h.q4 / total;
}

double carnot_cop(double beta1, double beta2) {
    if (!(beta2 > 0.0) || !(beta1 > beta2)) {
        throw InvalidParameter("carnot_cop: requires beta1 > beta2 > 0");
    }
    return beta2 / (beta1 - beta2);
}

double entropy_production(const CycleConfig& c, double qstar1, double qstar3) {
    require_qstar(qstar1, qstar3);
    const double x1 = c.x1();
    const double x2 = c.x2();
    const double c1 = coth(x1);
    const double c2 = coth(x2);
    return x2 * (qstar1 * c1 - c2) - x1 * (c1 - qstar3 * c2);
}

double cooling_power(double q4, double tau) {
    if (!(tau > 0.0)) {
        throw InvalidParameter("cooling_power: tau must be positive");
    }
    return q4 / (2.0 * tau);
}

bool cooling_condition(const CycleConfig& c) {
    return c.omega2 / c.omega1 > c.beta1 / c.beta2;
}

CyclePerformance evaluate_cycle(const CycleConfig& config, Mode mode,
                                const EvaluationOptions& options) {
    config.validate();

    double q1 = 1.0;
    double q3 = 1.0;
    double cost1 = 0.0;
    double cost3 = 0.0;
    const Ramp compression = Ramp::quintic(config.omega1, config.omega2, config.tau);
    const Ramp expansion = Ramp::quintic(config.omega2, config.omega1, config.tau);

    if (mode == Mode::NA) {
        q1 = qstar(compression, options.ode).qstar;
        q3 = qstar(expansion, options.ode).qstar;
        // numerical slack on the exact bound Q* >= 1
        q1 = std::max(q1, 1.0);
        q3 = std::max(q3, 1.0);
    } else if (mode == Mode::STA) {
        cost1 = sta_cost_avg(compression, config.beta1, options.quadrature);
        cost3 = sta_cost_avg(expansion, config.beta2, options.quadrature);
    }

    const Heats h = heats(config, q1, q3);
    const Works w = works(config, q1, q3);

    CyclePerformance p{};
    p.mode = mode;
    p.stroke1 = {q1, w.w1, cost1};
    p.stroke3 = {q3, w.w3, cost3};
    p.q2 = h.q2;
    p.q4 = h.q4;
    p.work_total = w.w1 + w.w3;
    p.entropy_production = entropy_production(config, q1, q3);
    p.entropy_rate = p.entropy_production / config.cycle_time();

    const double input = p.work_total + cost1 + cost3;
    p.cooling = h.q4 > 0.0 && input > 0.0;
    if (p.cooling) {
        // The adiabatic ratio collapses to omega1 / (omega2 - omega1); use it exactly.
        p.cop = mode == Mode::AD ? cop_adiabatic(config) : h.q4 / input;
        p.cooling_power = cooling_power(h.q4, config.tau);
        p.chi = figure_of_merit(*p.cop, *p.cooling_power);
    }
    return p;
}

}  // namespace ottofridge
