#pragma once

#include <optional>
#include <string_view>

#include "ottofridge/special.hpp"

namespace ottofridge {

/// Refrigerator parameterization. Units: hbar = k_B = m = 1.
///
/// omega1 < omega2 are the cold-side and hot-side trap frequencies, beta1 > beta2
/// the cold and hot bath inverse temperatures, tau the duration shared by the
/// compression (1) and expansion (3) strokes. Isochores take no time, so the
/// cycle lasts 2 tau.
struct CycleConfig {
    double omega1;
    double omega2;
    double beta1;
    double beta2;
    double tau;

    /// Throws InvalidParameter on any invariant violation.
    void validate() const;

    double x1() const noexcept { return 0.5 * beta1 * omega1; }
    double x2() const noexcept { return 0.5 * beta2 * omega2; }
    double cycle_time() const noexcept { return 2.0 * tau; }
};

enum class Mode { NA, STA, AD };

std::string_view to_string(Mode m) noexcept;

struct Heats {
    double q2;  ///< hot isochore
    double q4;  ///< cold isochore, > 0 when cooling
};

struct Works {
    double w1;  ///< compression
    double w3;  ///< expansion
};

Heats heats(const CycleConfig& config, double qstar1, double qstar3);
Works works(const CycleConfig& config, double qstar1, double qstar3);

/// epsilon = Q4 / (W1 + W3). Throws NotCooling if Q4 <= 0, NotRefrigerator if W1 + W3 <= 0.
double cop_nonadiabatic(const CycleConfig& config, double qstar1, double qstar3);

/// omega1 / (omega2 - omega1).
double cop_adiabatic(const CycleConfig& config);

/// Adiabatic heat over adiabatic work plus both time-averaged STA costs.
double cop_sta(const CycleConfig& config, double cost1, double cost3);

/// beta2 / (beta1 - beta2); requires beta1 > beta2 > 0.
double carnot_cop(double beta1, double beta2);

double entropy_production(const CycleConfig& config, double qstar1, double qstar3);

/// Q4 / (2 tau).
double cooling_power(double q4, double tau);

inline double figure_of_merit(double cop, double cooling_power) { return cop * cooling_power; }

/// omega2 / omega1 > beta1 / beta2 (strict).
bool cooling_condition(const CycleConfig& config);

struct StrokeResult {
    double qstar;
    double work;
    double sta_cost;
};

/// Per-mode cycle metrics. cop, cooling_power and chi are absent when the
/// cycle does not cool (cooling == false).
struct CyclePerformance {
    Mode mode;
    StrokeResult stroke1;
    StrokeResult stroke3;
    double q2;
    double q4;
    double work_total;
    std::optional<double> cop;
    std::optional<double> cooling_power;
    std::optional<double> chi;
    double entropy_production;
    double entropy_rate;
    bool cooling;
};

struct EvaluationOptions {
    OdeTolerances ode{};
    QuadratureTolerances quadrature{};
};

/// NA: Husimi Q* on both strokes, no control cost. STA: Q* = 1 with LCD costs
/// (stroke 1 at beta1 from omega1, stroke 3 at beta2 from omega2). AD: Q* = 1, no cost.
CyclePerformance evaluate_cycle(const CycleConfig& config, Mode mode,
                                const EvaluationOptions& options = {});

}  // namespace ottofridge
