#include "ottofridge/cli/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ottofridge/error.hpp"
#include "ottofridge/ramp.hpp"

namespace ottofridge::cli {

const std::vector<std::string> kSweepColumns = {
    "tau",       "qstar1",    "qstar3",     "w1_na",      "w3_na",     "q2_na",     "q4_na",
    "cost1",     "cost3",     "cop_na",     "cop_sta",    "cop_ad",    "cop_qsl",   "j_na",
    "j_sta",     "j_qsl",     "chi_na",     "chi_sta",    "chi_qsl",   "dstot_na",  "dstot_sta",
    "dstot_ad",  "dsrate_na", "dsrate_sta", "dsrate_ad",  "bures1",    "bures3",    "tau_qsl1",
    "tau_qsl3",  "min_omega_lcd_sq",        "cooling_flag",
};

// The *_ad pair is the adiabatic reference (inv_cop = 1 / eps_AD).
const std::vector<std::string> kParetoColumns = {
    "tau", "inv_cop_na", "inv_j_na", "inv_cop_sta", "inv_j_sta", "inv_cop_ad", "inv_j_ad", "cooling_flag",
};

PointResult evaluate_point(const RunConfig& config, double tau) {
    const CycleConfig cycle = config.cycle_at(tau);
    const EvaluationOptions options = config.evaluation_options();

    std::optional<QslBounds> bounds;
    if (cooling_condition(cycle)) {
        try {
            bounds = performance_bounds(cycle, options.quadrature);
        } catch (const DegenerateBound&) {
        }
    }
    return PointResult{
        cycle,
        evaluate_cycle(cycle, Mode::NA, options),
        evaluate_cycle(cycle, Mode::STA, options),
        evaluate_cycle(cycle, Mode::AD, options),
        bounds,
        min_lcd_frequency_sq(Ramp::quintic(cycle.omega1, cycle.omega2, tau)),
        min_lcd_frequency_sq(Ramp::quintic(cycle.omega2, cycle.omega1, tau)),
    };
}

SweepRow make_row(const PointResult& p) {
    SweepRow r{};
    r.tau = p.cycle.tau;
    r.qstar1 = p.na.stroke1.qstar;
    r.qstar3 = p.na.stroke3.qstar;
    r.w1_na = p.na.stroke1.work;
    r.w3_na = p.na.stroke3.work;
    r.q2_na = p.na.q2;
    r.q4_na = p.na.q4;
    r.cost1 = p.sta.stroke1.sta_cost;
    r.cost3 = p.sta.stroke3.sta_cost;
    r.cop_na = p.na.cop;
    r.cop_sta = p.sta.cop;
    r.cop_ad = p.ad.cop;
    r.j_na = p.na.cooling_power;
    r.j_sta = p.sta.cooling_power;
    r.j_ad = p.ad.cooling_power;
    r.chi_na = p.na.chi;
    r.chi_sta = p.sta.chi;
    r.dstot_na = p.na.entropy_production;
    r.dstot_sta = p.sta.entropy_production;
    r.dstot_ad = p.ad.entropy_production;
    r.dsrate_na = p.na.entropy_rate;
    r.dsrate_sta = p.sta.entropy_rate;
    r.dsrate_ad = p.ad.entropy_rate;
    if (p.bounds) {
        r.cop_qsl = p.bounds->cop_bound;
        r.j_qsl = p.bounds->cooling_bound;
        r.chi_qsl = p.bounds->chi_bound;
        r.bures1 = p.bounds->bures_1;
        r.bures3 = p.bounds->bures_3;
        r.tau_qsl1 = p.bounds->tau_qsl_1;
        r.tau_qsl3 = p.bounds->tau_qsl_3;
    }
    r.min_omega_lcd_sq = std::min(p.min_lcd_1.value, p.min_lcd_3.value);
    // NA cooling implies STA and AD cooling (their Q* = 1 cycles extract more heat).
    r.cooling_flag = p.na.cooling;
    return r;
}

std::vector<SweepRow> run_sweep(const RunConfig& config, int workers) {
    const std::vector<double> grid = tau_grid(config.sweep);
    std::vector<SweepRow> rows(grid.size());
    const int n = std::clamp(workers, 1, static_cast<int>(grid.size()));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            try {
                rows[i] = make_row(evaluate_point(config, grid[i]));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = grid.size();
            }
        }
    };

    std::vector<std::thread> pool;
    for (int k = 1; k < n; ++k) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return rows;
}

std::string format_number(std::optional<double> v) {
    if (!v) return {};
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, *v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::optional<double>> sweep_cells(const SweepRow& r) {
    return {r.tau,       r.qstar1,     r.qstar3,    r.w1_na,     r.w3_na,      r.q2_na,
            r.q4_na,     r.cost1,      r.cost3,     r.cop_na,    r.cop_sta,    r.cop_ad,
            r.cop_qsl,   r.j_na,       r.j_sta,     r.j_qsl,     r.chi_na,     r.chi_sta,
            r.chi_qsl,   r.dstot_na,   r.dstot_sta, r.dstot_ad,  r.dsrate_na,  r.dsrate_sta,
            r.dsrate_ad, r.bures1,     r.bures3,    r.tau_qsl1,  r.tau_qsl3,   r.min_omega_lcd_sq,
            r.cooling_flag ? 1.0 : 0.0};
}

std::optional<double> inverse(std::optional<double> v) {
    if (!v || *v == 0.0) return std::nullopt;
    return 1.0 / *v;
}

std::vector<std::optional<double>> pareto_cells(const SweepRow& r) {
    return {r.tau,
            inverse(r.cop_na),
            inverse(r.j_na),
            inverse(r.cop_sta),
            inverse(r.j_sta),
            inverse(r.cop_ad),
            inverse(r.j_ad),
            r.cooling_flag ? 1.0 : 0.0};
}

using CellFn = std::vector<std::optional<double>> (*)(const SweepRow&);

std::string to_csv(const std::vector<SweepRow>& rows, const std::vector<std::string>& columns, CellFn cells) {
    std::ostringstream out;
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
    out << '\n';
    for (const auto& row : rows) {
        const auto values = cells(row);
        for (std::size_t c = 0; c < values.size(); ++c) out << (c ? "," : "") << format_number(values[c]);
        out << '\n';
    }
    return out.str();
}

std::string to_json(const std::vector<SweepRow>& rows, const std::vector<std::string>& columns, CellFn cells) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        const auto values = cells(row);
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < values.size(); ++c) {
            if (columns[c] == "cooling_flag") {
                obj[columns[c]] = row.cooling_flag;
            } else if (values[c]) {
                obj[columns[c]] = *values[c];
            } else {
                obj[columns[c]] = nullptr;
            }
        }
        doc.push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows) { return to_csv(rows, kSweepColumns, sweep_cells); }
std::string sweep_json(const std::vector<SweepRow>& rows) { return to_json(rows, kSweepColumns, sweep_cells); }
std::string pareto_csv(const std::vector<SweepRow>& rows) { return to_csv(rows, kParetoColumns, pareto_cells); }
std::string pareto_json(const std::vector<SweepRow>& rows) { return to_json(rows, kParetoColumns, pareto_cells); }

}  // namespace ottofridge::cli
