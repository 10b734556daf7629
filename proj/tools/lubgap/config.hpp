#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lubgap/lubgap.h"

namespace lubgap_cli {

enum class Mode { Numeric, Asymptotic, Both };

struct Sweep {
    double eps_from = 0.0;
    double eps_to = 0.0;
    int points = 0;
    bool operator==(const Sweep&) const = default;
};

struct VerifySettings {
    std::uint64_t seed = 0;
    int surface_points = 0;
    int interior_points = 0;
    int random_configs = 0;
    std::vector<double> eps;
    bool operator==(const VerifySettings&) const = default;
};

struct RunConfig {
    lg_problem_desc problem{};
    lg_quad_desc quadrature{};
    std::optional<Sweep> sweep;
    std::string csv_path;
    std::string json_path;
    Mode mode = Mode::Both;
    bool override_flat_hypothesis = false;
    VerifySettings verify;

    RunConfig();
    // The epsilons of the run, largest first.
    std::vector<double> eps_values() const;
};

bool operator==(const RunConfig& a, const RunConfig& b);

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

RunConfig parse_config(const std::string& text, const std::string& origin = "<config>");
RunConfig load_config(const std::string& path);
std::string to_ini(const RunConfig& cfg);

// Checks the invariants of a fully assembled configuration (after command
// line overrides).
void validate(const RunConfig& cfg);

const char* mode_name(Mode m);
Mode parse_mode(const std::string& s);

// Shortest round-trip representation.
std::string format_double(double v);

}  // namespace lubgap_cli
