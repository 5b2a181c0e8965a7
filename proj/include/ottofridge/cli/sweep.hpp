#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ottofridge/cli/config.hpp"
#include "ottofridge/qsl.hpp"
#include "ottofridge/ramp.hpp"
#include "ottofridge/thermo.hpp"

namespace ottofridge::cli {

/// One tau point of the figure sweep. Optional cells are empty in CSV output.
struct SweepRow {
    double tau;
    double qstar1;
    double qstar3;
    double w1_na;
    double w3_na;
    double q2_na;
    double q4_na;
    double cost1;
    double cost3;
    std::optional<double> cop_na, cop_sta, cop_ad, cop_qsl;
    std::optional<double> j_na, j_sta, j_qsl;
    std::optional<double> chi_na, chi_sta, chi_qsl;
    double dstot_na, dstot_sta, dstot_ad;
    double dsrate_na, dsrate_sta, dsrate_ad;
    std::optional<double> bures1, bures3, tau_qsl1, tau_qsl3;
    double min_omega_lcd_sq;
    bool cooling_flag;
    std::optional<double> j_ad;  ///< not a sweep column; feeds the Pareto reference
};

/// Everything computed at one tau: the three cycle modes and (when defined) the QSL bounds.
struct PointResult {
    CycleConfig cycle;
    CyclePerformance na;
    CyclePerformance sta;
    CyclePerformance ad;
    std::optional<QslBounds> bounds;
    LcdMinimum min_lcd_1;
    LcdMinimum min_lcd_3;
};

PointResult evaluate_point(const RunConfig& config, double tau);
SweepRow make_row(const PointResult& point);

/// Evaluates rows concurrently on `workers` threads; output order follows the grid.
std::vector<SweepRow> run_sweep(const RunConfig& config, int workers);

extern const std::vector<std::string> kSweepColumns;
extern const std::vector<std::string> kParetoColumns;

/// 17 significant digits, locale independent; empty for absent values.
std::string format_number(std::optional<double> v);

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const std::vector<SweepRow>& rows);
std::string pareto_csv(const std::vector<SweepRow>& rows);
std::string pareto_json(const std::vector<SweepRow>& rows);

}  // namespace ottofridge::cli
