#include "ottofridge/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ottofridge/cli/config.hpp"
#include "ottofridge/cli/sweep.hpp"
#include "ottofridge/dynamics.hpp"
#include "ottofridge/error.hpp"
#include "ottofridge/fock_oracle.hpp"
#include "ottofridge/qsl.hpp"
#include "ottofridge/ramp.hpp"

namespace ottofridge::cli {

namespace {

using Json = nlohmann::ordered_json;

struct CommonFlags {
    std::string config;
    std::optional<std::string> out;
    std::optional<std::string> format;
    int workers = 0;
    std::optional<long long> seed;  // reserved: nothing is stochastic yet
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config, "JSON configuration file")->required();
    cmd->add_option("--out", f.out, "write the result here instead of stdout");
    cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--workers", f.workers, "sweep worker threads (0 = hardware concurrency)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", f.seed, "reserved; accepted and ignored");
}

int worker_count(const CommonFlags& f) {
    int n = f.workers;
    if (const char* env = std::getenv("OTTOFRIDGE_WORKERS")) {
        try {
            n = std::stoi(env);
        } catch (const std::exception&) {
            throw ConfigError("OTTOFRIDGE_WORKERS", "must be an integer");
        }
        if (n < 0) throw ConfigError("OTTOFRIDGE_WORKERS", "must be non-negative");
    }
    if (n == 0) n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return n;
}

Format resolve_format(const CommonFlags& f, const RunConfig& c, Format fallback) {
    if (f.format) return *f.format == "json" ? Format::json : Format::csv;
    return c.output.format.value_or(fallback);
}

void emit(const std::string& text, const CommonFlags& f, const RunConfig& c, std::ostream& out) {
    const std::optional<std::string> path = f.out ? f.out : c.output.path;
    if (!path) {
        out << text;
        out.flush();
        return;
    }
    std::ofstream file(*path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open " + *path + " for writing");
    file << text;
    file.close();
    if (!file) throw IoError("write to " + *path + " failed");
}

// JSON numbers are emitted in shortest round-trip form, so no precision is lost.
Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json num(const std::optional<double>& v) { return v ? num(*v) : Json(nullptr); }

Json cycle_json(const CycleConfig& c) {
    return {{"omega1", num(c.omega1)}, {"omega2", num(c.omega2)}, {"beta1", num(c.beta1)},
            {"beta2", num(c.beta2)},   {"tau", num(c.tau)}};
}

Json performance_json(const CyclePerformance& p) {
    auto stroke = [](const StrokeResult& s) {
        return Json{{"qstar", num(s.qstar)}, {"work", num(s.work)}, {"sta_cost", num(s.sta_cost)}};
    };
    return {{"mode", std::string(to_string(p.mode))},
            {"stroke1", stroke(p.stroke1)},
            {"stroke3", stroke(p.stroke3)},
            {"q2", num(p.q2)},
            {"q4", num(p.q4)},
            {"work_total", num(p.work_total)},
            {"cop", num(p.cop)},
            {"cooling_power", num(p.cooling_power)},
            {"chi", num(p.chi)},
            {"entropy_production", num(p.entropy_production)},
            {"entropy_rate", num(p.entropy_rate)},
            {"cooling", p.cooling}};
}

Json bounds_json(const std::optional<QslBounds>& b) {
    if (!b) return nullptr;
    return {{"tau_qsl_1", num(b->tau_qsl_1)},   {"tau_qsl_3", num(b->tau_qsl_3)},
            {"bures_1", num(b->bures_1)},       {"bures_3", num(b->bures_3)},
            {"cop_bound", num(b->cop_bound)},   {"cooling_bound", num(b->cooling_bound)},
            {"chi_bound", num(b->chi_bound)}};
}

Json lcd_json(const LcdMinimum& m) { return {{"value", num(m.value)}, {"time", num(m.time)}}; }

std::vector<std::string> trap_warnings(const PointResult& p) {
    std::vector<std::string> w;
    if (p.min_lcd_1.value <= 0.0) w.push_back("stroke 1: LCD trap inverted (min Omega^2 <= 0)");
    if (p.min_lcd_3.value <= 0.0) w.push_back("stroke 3: LCD trap inverted (min Omega^2 <= 0)");
    return w;
}

int cmd_evaluate(const CommonFlags& f, std::ostream& out) {
    const RunConfig c = load_config(f.config);
    const CycleConfig cycle = c.cycle();
    const PointResult p = evaluate_point(c, cycle.tau);

    Json report;
    report["config"] = cycle_json(cycle);
    report["cooling"] = cooling_condition(cycle);
    report["cooling_at_tau"] = p.na.cooling;
    report["cop_ad"] = num(cop_adiabatic(cycle));
    report["carnot"] = num(carnot_cop(cycle.beta1, cycle.beta2));
    report["qstar"] = {{"stroke1", num(p.na.stroke1.qstar)}, {"stroke3", num(p.na.stroke3.qstar)}};
    report["sta_cost"] = {{"stroke1", num(p.sta.stroke1.sta_cost)}, {"stroke3", num(p.sta.stroke3.sta_cost)}};
    report["performance"] = {{"NA", performance_json(p.na)},
                             {"STA", performance_json(p.sta)},
                             {"AD", performance_json(p.ad)}};
    report["bounds"] = bounds_json(p.bounds);
    report["validation"] = {{"min_omega_lcd_sq", {{"stroke1", lcd_json(p.min_lcd_1)}, {"stroke3", lcd_json(p.min_lcd_3)}}},
                            {"trap_inverted", p.min_lcd_1.value <= 0.0 || p.min_lcd_3.value <= 0.0},
                            {"warnings", trap_warnings(p)}};
    emit(report.dump(2) + "\n", f, c, out);
    return kSuccess;
}

int cmd_sweep(const CommonFlags& f, std::ostream& out, bool pareto) {
    const RunConfig c = load_config(f.config);
    const auto rows = run_sweep(c, worker_count(f));
    const bool json = resolve_format(f, c, Format::csv) == Format::json;
    const std::string text = pareto ? (json ? pareto_json(rows) : pareto_csv(rows))
                                    : (json ? sweep_json(rows) : sweep_csv(rows));
    emit(text, f, c, out);
    return kSuccess;
}

Json validate_point(const RunConfig& c, double tau) {
    const CycleConfig cycle = c.cycle_at(tau);
    const OdeTolerances ode{c.numerics.ode_rtol, c.numerics.ode_atol};
    std::vector<std::string> warnings;

    auto stroke = [&](double wi, double wf, const char* name) {
        const Ramp ramp = Ramp::quintic(wi, wf, tau);
        const LcdMinimum m = min_lcd_frequency_sq(ramp);
        const AdiabaticityResult q = qstar(ramp, ode);
        const bool qstar_ok = q.qstar >= 1.0 - 1e-9 && q.qstar <= qstar_sudden(wi, wf) * (1.0 + 1e-6);
        const bool drift_ok = q.wronskian_drift <= 1e-9;
        if (m.value <= 0.0) warnings.push_back(std::string(name) + ": LCD trap inverted (min Omega^2 <= 0)");
        if (!qstar_ok) warnings.push_back(std::string(name) + ": Q* outside [1, Q*_sudden]");
        if (!drift_ok) warnings.push_back(std::string(name) + ": Wronskian drift above 1e-9");
        return Json{{"min_omega_lcd_sq", num(m.value)},
                    {"argmin_t", num(m.time)},
                    {"qstar", num(q.qstar)},
                    {"qstar_ok", qstar_ok},
                    {"wronskian_drift", num(q.wronskian_drift)},
                    {"solver_steps", q.solver_steps}};
    };

    Json point;
    point["tau"] = num(tau);
    point["stroke1"] = stroke(cycle.omega1, cycle.omega2, "stroke 1");
    point["stroke3"] = stroke(cycle.omega2, cycle.omega1, "stroke 3");
    point["trap_inverted"] = point["stroke1"]["min_omega_lcd_sq"].get<double>() <= 0.0 ||
                             point["stroke3"]["min_omega_lcd_sq"].get<double>() <= 0.0;
    point["warnings"] = warnings;
    return point;
}

int cmd_validate(const CommonFlags& f, std::ostream& out) {
    const RunConfig c = load_config(f.config);
    // Without cycle.tau the whole sweep grid is checked.
    const std::vector<double> taus = c.tau ? std::vector<double>{*c.tau} : tau_grid(c.sweep);

    Json report;
    report["cooling"] = cooling_condition(c.cycle_at(taus.front()));
    Json points = Json::array();
    std::size_t warnings = 0;
    for (double tau : taus) {
        points.push_back(validate_point(c, tau));
        warnings += points.back()["warnings"].size();
    }
    report["points"] = std::move(points);
    report["warning_count"] = warnings;
    emit(report.dump(2) + "\n", f, c, out);
    return kSuccess;
}

struct CheckRow {
    std::string quantity;
    double library;
    fock::OracleReport oracle;
    double tolerance;

    double delta() const { return std::abs(library - oracle.value); }
    std::string status() const {
        if (!oracle.converged) return "unconverged";
        return delta() <= tolerance ? "pass" : "FAIL";
    }
};

std::string sci(double v) {
    if (std::isnan(v)) return "nan";
    std::ostringstream s;
    s << std::setprecision(10) << v;
    return s.str();
}

int cmd_oracle_check(const CommonFlags& f, std::ostream& out) {
    const RunConfig c = load_config(f.config, Strictness::oracle);

    fock::OracleOptions qopt;
    if (c.numerics.fock_dim) {
        qopt.dim = *c.numerics.fock_dim;
        qopt.auto_escalate = false;
    }
    fock::OracleOptions fine = qopt;
    fine.tolerance = 1e-5;

    const OdeTolerances ode{c.numerics.ode_rtol, c.numerics.ode_atol};
    std::vector<CheckRow> rows;
    for (double tau : {1.0, 5.0, 10.0}) {
        const Ramp ramp = Ramp::quintic(c.omega1, c.omega2, tau);
        rows.push_back({"qstar(tau=" + sci(tau) + ")", qstar(ramp, ode).qstar,
                        fock::oracle_qstar(ramp, c.beta1, qopt), 1e-3});
    }

    const double b1 = c.beta1, b2 = c.beta2, w1 = c.omega1, w2 = c.omega2;
    rows.push_back({"fidelity(stroke 1 endpoints)",
                    fidelity(thermal_state(b1, w1), adiabatic_final_state(b1, w1, w2)),
                    fock::oracle_fidelity({b1, w1}, {b1 * w1 / w2, w2}, fine), 1e-4});
    rows.push_back({"fidelity(stroke 3 endpoints)",
                    fidelity(thermal_state(b2, w2), adiabatic_final_state(b2, w2, w1)),
                    fock::oracle_fidelity({b2, w2}, {b2 * w2 / w1, w1}, fine), 1e-4});
    // Vacuum: beta * omega = 200 leaves no thermal weight above the ground state.
    rows.push_back({"fidelity(vacuum w1, vacuum 4 w1)",
                    fidelity(thermal_state(200.0 / w1, w1), thermal_state(50.0 / w1, 4.0 * w1)),
                    fock::oracle_fidelity({200.0 / w1, w1}, {50.0 / w1, 4.0 * w1}, fine), 1e-4});

    const CycleConfig cycle = c.cycle_at(1.0);
    rows.push_back({"entropy production (relative entropies)", entropy_production(cycle, 1.0, 1.0),
                    fock::oracle_isochore_entropy(cycle, fine), 1e-4});

    bool any_unconverged = false;
    bool any_fail = false;
    for (const auto& r : rows) {
        any_unconverged |= !r.oracle.converged;
        any_fail |= r.status() == "FAIL";
    }

    std::ostringstream text;
    if (resolve_format(f, c, Format::csv) == Format::json) {
        Json arr = Json::array();
        for (const auto& r : rows) {
            arr.push_back({{"quantity", r.quantity},
                           {"library", num(r.library)},
                           {"oracle", num(r.oracle.value)},
                           {"delta", r.oracle.converged ? num(r.delta()) : Json(nullptr)},
                           {"tolerance", num(r.tolerance)},
                           {"status", r.status()},
                           {"dim", r.oracle.dim_used},
                           {"steps", r.oracle.steps_used}});
        }
        text << arr.dump(2) << "\n";
    } else {
        text << std::left << std::setw(42) << "quantity" << std::setw(18) << "library" << std::setw(18)
             << "oracle" << std::setw(18) << "|delta|" << std::setw(10) << "tol" << std::setw(7) << "dim"
             << "status\n";
        for (const auto& r : rows) {
            text << std::left << std::setw(42) << r.quantity << std::setw(18) << sci(r.library)
                 << std::setw(18) << sci(r.oracle.value) << std::setw(18)
                 << (r.oracle.converged ? sci(r.delta()) : std::string("-")) << std::setw(10)
                 << sci(r.tolerance) << std::setw(7) << r.oracle.dim_used << r.status() << "\n";
        }
    }
    emit(text.str(), f, c, out);
    if (any_unconverged) return kUnconverged;
    return any_fail ? kOracleFailure : kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite-time quantum Otto refrigerator simulator"};
    app.name(args.empty() ? "ottofridge" : args.front());
    app.require_subcommand(1);

    CommonFlags flags;
    CLI::App* evaluate = app.add_subcommand("evaluate", "single-tau JSON report for all three driving modes");
    CLI::App* sweep = app.add_subcommand("sweep", "tau sweep dataset");
    CLI::App* pareto = app.add_subcommand("pareto", "inverse COP vs inverse cooling power dataset");
    CLI::App* validate = app.add_subcommand("validate", "cooling condition, trap inversion and Q* sanity");
    CLI::App* oracle = app.add_subcommand("oracle-check", "cross-check against the truncated Fock-space oracle");
    for (CLI::App* cmd : {evaluate, sweep, pareto, validate, oracle}) add_common(cmd, flags);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kConfigError;
    }

    try {
        if (evaluate->parsed()) return cmd_evaluate(flags, out);
        if (sweep->parsed()) return cmd_sweep(flags, out, false);
        if (pareto->parsed()) return cmd_sweep(flags, out, true);
        if (validate->parsed()) return cmd_validate(flags, out);
        return cmd_oracle_check(flags, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return kIoError;
    } catch (const InvalidParameter& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const StiffnessError& e) {
        err << "unconverged: " << e.what() << "\n";
        return kUnconverged;
    } catch (const NumericalAccuracyError& e) {
        err << "unconverged: " << e.what() << "\n";
        return kUnconverged;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kOracleFailure;
    }
}

}  // namespace ottofridge::cli
