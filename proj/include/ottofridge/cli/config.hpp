#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ottofridge/special.hpp"
#include "ottofridge/thermo.hpp"

namespace ottofridge::cli {

/// Schema violation; `path` names the offending field, e.g. "cycle.omega2".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& message)
        : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Unreadable input or unwritable output.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Spacing { linear, log };
enum class Format { csv, json };

struct SweepSpec {
    double tau_min = 0.5;
    double tau_max = 45.0;
    int points = 200;
    Spacing spacing = Spacing::log;
};

struct NumericsSpec {
    double ode_rtol = 1e-10;
    double ode_atol = 1e-12;
    double quadrature_tol = 1e-10;
    std::optional<int> fock_dim;  ///< fixed Fock truncation; absent = auto-escalate from 80
};

struct OutputSpec {
    std::optional<std::string> path;
    std::optional<Format> format;
};

/// The cycle block without tau is a complete refrigerator description for
/// sweeps; single-point commands additionally need cycle.tau.
struct RunConfig {
    double omega1 = 0.0;
    double omega2 = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    std::optional<double> tau;
    SweepSpec sweep;
    NumericsSpec numerics;
    OutputSpec output;

    CycleConfig cycle_at(double tau_value) const {
        return {omega1, omega2, beta1, beta2, tau_value};
    }

    /// Throws ConfigError("cycle.tau", ...) when tau is absent.
    CycleConfig cycle() const;

    EvaluationOptions evaluation_options() const;
};

enum class Strictness {
    refrigerator,  ///< omega2 > omega1 and beta1 > beta2
    oracle,        ///< positivity only; equal frequencies allowed
};

/// Parses and validates a JSON document. Throws ConfigError.
RunConfig parse_config(const std::string& json_text, Strictness strictness = Strictness::refrigerator);

/// Reads the file first; an unreadable file is an IoError.
RunConfig load_config(const std::string& file, Strictness strictness = Strictness::refrigerator);

/// Sweep grid in ascending order.
std::vector<double> tau_grid(const SweepSpec& sweep);

}  // namespace ottofridge::cli
