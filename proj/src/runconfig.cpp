#include "leakywire/runconfig.hpp"

#include "leakywire/errors.hpp"
#include "leakywire/geometry.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace leakywire {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': not a number: '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': not an integer: '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("key '" + key + "': not a boolean: '" + v + "'");
}

} // namespace

std::map<std::string, std::string> parse_kv_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": empty key or value");
        if (kv.count(key))
            throw ConfigError("duplicate config key '" + key + "'");
        kv[key] = value;
    }
    return kv;
}

void apply_override(std::map<std::string, std::string>& kv,
                    const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("--set expects key=value, got '" + assignment + "'");
    const std::string key = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    if (key.empty() || value.empty())
        throw ConfigError("--set expects key=value, got '" + assignment + "'");
    kv[key] = value;
}

RunConfig make_config(const std::map<std::string, std::string>& kv) {
    RunConfig cfg;
    bool have_command = false;
    for (const auto& [key, value] : kv) {
        if (key == "command") {
            have_command = true;
            if (value == "spectrum") cfg.command = Command::spectrum;
            else if (value == "bands") cfg.command = Command::bands;
            else if (value == "counting") cfg.command = Command::counting;
            else if (value == "transverse") cfg.command = Command::transverse;
            else if (value == "verify-bracketing")
                cfg.command = Command::verify_bracketing;
            else if (value == "semiclassical")
                cfg.command = Command::semiclassical;
            else throw ConfigError("unknown command '" + value + "'");
        } else if (key == "curve.builtin") {
            cfg.builtin = value;
        } else if (key == "curve.samples") {
            cfg.samples_path = value;
        } else if (key == "curve.closed") {
            cfg.samples_closed = to_bool(key, value);
        } else if (key == "curve.profile") {
            cfg.profile_path = value;
        } else if (key.rfind("curve.", 0) == 0) {
            cfg.curve_params[key.substr(6)] = to_double(key, value);
        } else if (key == "alpha") {
            std::string item;
            std::istringstream items(value);
            while (std::getline(items, item, ',')) {
                item = trim(item);
                if (!item.empty())
                    cfg.alphas.push_back(to_double(key, item));
            }
        } else if (key == "bc") {
            if (value == "periodic") cfg.bc = BoundaryCondition::periodic;
            else if (value == "dirichlet") cfg.bc = BoundaryCondition::dirichlet;
            else if (value == "neumann") cfg.bc = BoundaryCondition::neumann;
            else if (value == "floquet") cfg.bc = BoundaryCondition::floquet;
            else throw ConfigError("unknown bc '" + value + "'");
        } else if (key == "n") {
            cfg.n = to_int(key, value);
        } else if (key == "grid") {
            cfg.grid = to_int(key, value);
        } else if (key == "theta_count") {
            cfg.theta_count = to_int(key, value);
        } else if (key == "j_max") {
            cfg.j_max = to_int(key, value);
        } else if (key == "d.rule") {
            if (value == "auto") cfg.d_fixed = false;
            else if (value == "fixed") cfg.d_fixed = true;
            else throw ConfigError("d.rule must be 'auto' or 'fixed'");
        } else if (key == "d.value") {
            cfg.d_value = to_double(key, value);
        } else if (key == "h") {
            cfg.h = to_double(key, value);
        } else if (key == "K") {
            cfg.K = to_double(key, value);
        } else if (key == "output") {
            cfg.output = value;
        } else if (key == "format") {
            if (value == "csv") cfg.format = OutputFormat::csv;
            else if (value == "json") cfg.format = OutputFormat::json;
            else throw ConfigError("format must be 'csv' or 'json'");
        } else if (key == "threads") {
            cfg.threads = to_int(key, value);
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    if (!have_command) throw ConfigError("missing 'command'");

    int sources = 0;
    sources += cfg.builtin.empty() ? 0 : 1;
    sources += cfg.samples_path.empty() ? 0 : 1;
    sources += cfg.profile_path.empty() ? 0 : 1;
    if (sources == 0) throw ConfigError("missing curve source");
    if (sources > 1) throw ConfigError("conflicting curve sources");
    if (!cfg.curve_params.empty() && cfg.builtin.empty())
        throw ConfigError("curve.* parameters require curve.builtin");

    if (cfg.alphas.empty()) throw ConfigError("alpha sweep must be nonempty");
    if (cfg.n < 64) throw ConfigError("n must be at least 64");
    if (cfg.grid < 16) throw ConfigError("grid must be at least 16");
    if (cfg.j_max < 1) throw ConfigError("j_max must be positive");
    if (cfg.d_fixed && !(cfg.d_value > 0.0))
        throw ConfigError("tube radius must be positive");
    if (cfg.threads < 1) throw ConfigError("threads must be positive");
    return cfg;
}

RunConfig parse_config_file(const std::string& path,
                            const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    auto kv = parse_kv_text(buf.str());
    for (const auto& o : overrides) apply_override(kv, o);
    return make_config(kv);
}

ResolvedInput resolve_input(const RunConfig& cfg) {
    ResolvedInput out;
    if (!cfg.builtin.empty()) {
        const auto curve = builtin_curve(cfg.builtin, cfg.curve_params);
        out.profile = curvature_profile(curve, cfg.grid);
        if (curve.mode == CurveMode::periodic)
            out.K = curve.period_vector.norm();
    } else if (!cfg.samples_path.empty()) {
        auto samples = load_curve_samples(cfg.samples_path);
        samples.closed = cfg.samples_closed;
        const auto curve = reparametrize_arclength(samples);
        out.profile = curvature_profile(curve, cfg.grid);
    } else {
        out.profile = load_curvature_profile(cfg.profile_path);
    }
    if (cfg.K > 0.0) out.K = cfg.K;
    return out;
}

double resolve_d(const RunConfig& cfg, double alpha) {
    return cfg.d_fixed ? cfg.d_value : std::exp(std::numbers::pi * alpha);
}

} // namespace leakywire
