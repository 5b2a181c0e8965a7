#include "ottofridge/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace ottofridge::cli {

using nlohmann::json;

namespace {

const json* member(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double number(const json& obj, const std::string& prefix, const char* key) {
    const json* v = member(obj, key);
    const std::string path = prefix + "." + key;
    if (!v) throw ConfigError(path, "required field missing");
    if (!v->is_number()) throw ConfigError(path, "must be a number");
    const double d = v->get<double>();
    if (!std::isfinite(d)) throw ConfigError(path, "must be finite");
    return d;
}

std::optional<double> optional_number(const json& obj, const std::string& prefix, const char* key) {
    if (!member(obj, key)) return std::nullopt;
    return number(obj, prefix, key);
}

void positive(double v, const std::string& path) {
    if (!(v > 0.0)) throw ConfigError(path, "must be positive");
}

void tolerance(double v, const std::string& path) {
    if (!(v > 0.0 && v <= 1e-2)) throw ConfigError(path, "must lie in (0, 1e-2]");
}

const json& block(const json& root, const char* key, bool required) {
    static const json empty = json::object();
    const json* b = member(root, key);
    if (!b) {
        if (required) throw ConfigError(key, "required block missing");
        return empty;
    }
    if (!b->is_object()) throw ConfigError(key, "must be an object");
    return *b;
}

Format parse_format(const json& v, const std::string& path) {
    if (v == "csv") return Format::csv;
    if (v == "json") return Format::json;
    throw ConfigError(path, "must be \"csv\" or \"json\"");
}

}  // namespace

CycleConfig RunConfig::cycle() const {
    if (!tau) throw ConfigError("cycle.tau", "required for this command");
    return cycle_at(*tau);
}

EvaluationOptions RunConfig::evaluation_options() const {
    EvaluationOptions o;
    o.ode = {numerics.ode_rtol, numerics.ode_atol};
    o.quadrature = {numerics.quadrature_tol, 1e-12};
    return o;
}

RunConfig parse_config(const std::string& json_text, Strictness strictness) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("$", std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("$", "top level must be an object");

    RunConfig c;
    const json& cyc = block(root, "cycle", true);
    c.omega1 = number(cyc, "cycle", "omega1");
    c.omega2 = number(cyc, "cycle", "omega2");
    c.beta1 = number(cyc, "cycle", "beta1");
    c.beta2 = number(cyc, "cycle", "beta2");
    c.tau = optional_number(cyc, "cycle", "tau");
    positive(c.omega1, "cycle.omega1");
    positive(c.omega2, "cycle.omega2");
    positive(c.beta1, "cycle.beta1");
    positive(c.beta2, "cycle.beta2");
    if (c.tau) positive(*c.tau, "cycle.tau");
    if (strictness == Strictness::refrigerator) {
        if (!(c.omega2 > c.omega1)) throw ConfigError("cycle.omega2", "must exceed cycle.omega1");
        if (!(c.beta1 > c.beta2)) throw ConfigError("cycle.beta1", "must exceed cycle.beta2");
    }

    const json& sw = block(root, "sweep", false);
    if (auto v = optional_number(sw, "sweep", "tau_min")) c.sweep.tau_min = *v;
    if (auto v = optional_number(sw, "sweep", "tau_max")) c.sweep.tau_max = *v;
    if (const json* p = member(sw, "points")) {
        if (!p->is_number_integer()) throw ConfigError("sweep.points", "must be an integer");
        c.sweep.points = p->get<int>();
    }
    if (const json* s = member(sw, "spacing")) {
        if (*s == "linear") {
            c.sweep.spacing = Spacing::linear;
        } else if (*s == "log") {
            c.sweep.spacing = Spacing::log;
        } else {
            throw ConfigError("sweep.spacing", "must be \"linear\" or \"log\"");
        }
    }
    positive(c.sweep.tau_min, "sweep.tau_min");
    if (c.sweep.points < 1) throw ConfigError("sweep.points", "must be >= 1");
    if (c.sweep.tau_max < c.sweep.tau_min) throw ConfigError("sweep.tau_max", "must be >= sweep.tau_min");

    const json& num = block(root, "numerics", false);
    if (auto v = optional_number(num, "numerics", "ode_rtol")) c.numerics.ode_rtol = *v;
    if (auto v = optional_number(num, "numerics", "ode_atol")) c.numerics.ode_atol = *v;
    if (auto v = optional_number(num, "numerics", "quadrature_tol")) c.numerics.quadrature_tol = *v;
    tolerance(c.numerics.ode_rtol, "numerics.ode_rtol");
    tolerance(c.numerics.ode_atol, "numerics.ode_atol");
    tolerance(c.numerics.quadrature_tol, "numerics.quadrature_tol");
    if (const json* d = member(num, "fock_dim")) {
        if (!d->is_number_integer() || d->get<long>() < 2 || d->get<long>() > 4096) {
            throw ConfigError("numerics.fock_dim", "must be an integer in [2, 4096]");
        }
        c.numerics.fock_dim = d->get<int>();
    }

    const json& out = block(root, "output", false);
    if (const json* p = member(out, "path")) {
        if (!p->is_string()) throw ConfigError("output.path", "must be a string");
        c.output.path = p->get<std::string>();
    }
    if (const json* f = member(out, "format")) c.output.format = parse_format(*f, "output.format");

    return c;
}

RunConfig load_config(const std::string& file, Strictness strictness) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot read config file " + file);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), strictness);
}

std::vector<double> tau_grid(const SweepSpec& s) {
    std::vector<double> grid(static_cast<std::size_t>(s.points));
    if (s.points == 1) {
        grid[0] = s.tau_min;
        return grid;
    }
    const int last = s.points - 1;
    for (int k = 0; k <= last; ++k) {
        const double f = static_cast<double>(k) / last;
        grid[k] = s.spacing == Spacing::log
                      ? std::exp(std::log(s.tau_min) + f * (std::log(s.tau_max) - std::log(s.tau_min)))
                      : s.tau_min + f * (s.tau_max - s.tau_min);
    }
    grid.front() = s.tau_min;
    grid.back() = s.tau_max;
    return grid;
}

}  // namespace ottofridge::cli
