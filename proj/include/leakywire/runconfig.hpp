#pragma once

#include "leakywire/comparison.hpp"

#include <map>
#include <string>
#include <vector>

namespace leakywire {

enum class Command {
    spectrum,
    bands,
    counting,
    transverse,
    verify_bracketing,
    semiclassical
};

enum class OutputFormat { csv, json };

struct RunConfig {
    Command command = Command::spectrum;

    // curve source: exactly one of the three
    std::string builtin;                        // curve.builtin catalog name
    std::map<std::string, double> curve_params; // remaining curve.* keys
    std::string samples_path;                   // curve.samples
    bool samples_closed = false;                // curve.closed
    std::string profile_path;                   // curve.profile

    std::vector<double> alphas; // nonempty sweep
    BoundaryCondition bc = BoundaryCondition::periodic;
    int n = 2048;          // operator grid
    int grid = 2048;       // curvature-profile grid
    int theta_count = 64;  // Brillouin samples
    int j_max = 6;
    bool d_fixed = false;  // d rule: false = auto e^{pi alpha}
    double d_value = 0.0;
    double h = 1.0;        // semiclassical parameter
    double K = 0.0;        // quasimomentum scale; 0 = take it from the curve
    std::string output = "out.csv";
    OutputFormat format = OutputFormat::csv;
    int threads = 1;
};

/// Flat `key = value` lines, '#' comments; malformed lines are hard errors.
std::map<std::string, std::string> parse_kv_text(const std::string& text);

/// Apply one `key=value` override (the CLI --set flag).
void apply_override(std::map<std::string, std::string>& kv,
                    const std::string& assignment);

/// Validate and convert; unknown keys are hard errors.
RunConfig make_config(const std::map<std::string, std::string>& kv);

RunConfig parse_config_file(const std::string& path,
                            const std::vector<std::string>& overrides = {});

/// Curve source resolved into a curvature profile plus the quasimomentum
/// scale K (config override, else the curve's period vector, else 0).
struct ResolvedInput {
    CurvatureProfile profile;
    double K = 0.0;
};

ResolvedInput resolve_input(const RunConfig& cfg);

/// Tube radius for a given alpha under the configured d rule.
double resolve_d(const RunConfig& cfg, double alpha);

} // namespace leakywire
