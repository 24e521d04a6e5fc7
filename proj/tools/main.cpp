#include "leakywire/asymptotics.hpp"
#include "leakywire/bracketing.hpp"
#include "leakywire/comparison.hpp"
#include "leakywire/errors.hpp"
#include "leakywire/reports.hpp"
#include "leakywire/runconfig.hpp"
#include "leakywire/transverse.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace leakywire;

const char* class_name(ErrorClass cls) {
    switch (cls) {
        case ErrorClass::config: return "config";
        case ErrorClass::geometry: return "geometry";
        case ErrorClass::regime: return "regime";
        case ErrorClass::solver: return "solver";
        case ErrorClass::io: return "io";
    }
    return "unknown";
}

std::string alpha_path(const std::string& base, size_t index) {
    const auto dot = base.find_last_of('.');
    const auto slash = base.find_last_of('/');
    const std::string tag = ".a" + std::to_string(index);
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return base + tag;
    return base.substr(0, dot) + tag + base.substr(dot);
}

BoundaryCondition squeeze_bc(const RunConfig& cfg, const CurvatureProfile& p) {
    const bool cyclic =
        p.mode == CurveMode::loop || p.mode == CurveMode::periodic;
    if (cyclic) return BoundaryCondition::periodic;
    if (cfg.bc == BoundaryCondition::dirichlet ||
        cfg.bc == BoundaryCondition::neumann)
        return cfg.bc;
    return BoundaryCondition::dirichlet;
}

// one output artifact per alpha; sweeps add an .a<k> tag and a combined
// JSON summary at the configured path
void emit_sweep(const RunConfig& cfg,
                const std::vector<std::pair<double, std::string>>& files,
                const nlohmann::json& summary) {
    if (files.size() == 1) return; // single alpha writes the main path directly
    nlohmann::json j;
    j["alphas"] = nlohmann::json::array();
    for (const auto& [alpha, path] : files)
        j["alphas"].push_back({{"alpha", alpha}, {"file", path}});
    j["summary"] = summary;
    write_text_atomic(cfg.output, j.dump(2) + "\n");
}

int run(const RunConfig& cfg) {
    const auto input = resolve_input(cfg);
    const auto& profile = input.profile;
    const bool single = cfg.alphas.size() == 1;
    std::vector<std::pair<double, std::string>> files;
    nlohmann::json summary = nlohmann::json::array();

    auto out_path = [&](size_t i) {
        return single ? cfg.output : alpha_path(cfg.output, i);
    };

    switch (cfg.command) {
        case Command::spectrum: {
            const SpectrumResult res =
                profile.mode == CurveMode::infinite_truncated
                    ? infinite_curve_spectrum(profile, cfg.j_max,
                                              std::max(cfg.n, 2048))
                    : eigenvalues(build_operator(profile, cfg.bc, cfg.n),
                                  cfg.j_max);
            const std::string body = cfg.format == OutputFormat::csv
                                         ? spectrum_csv(res)
                                         : spectrum_json(res);
            for (size_t i = 0; i < cfg.alphas.size(); ++i) {
                write_text_atomic(out_path(i), body);
                files.emplace_back(cfg.alphas[i], out_path(i));
                summary.push_back({{"alpha", cfg.alphas[i]},
                                   {"n_negative", res.n_negative}});
            }
            std::cout << "spectrum: " << res.mu.size() << " eigenvalues, "
                      << res.n_negative << " negative\n";
            break;
        }
        case Command::bands: {
            if (!(input.K > 0.0))
                throw ConfigError("bands requires a periodic curve or an "
                                  "explicit K");
            const auto table = band_table_with_edges(
                profile, input.K, cfg.theta_count, cfg.j_max, cfg.n);
            const auto gaps = gap_widths(table);
            const std::string body = cfg.format == OutputFormat::csv
                                         ? bands_csv(table)
                                         : bands_json(table, gaps);
            for (size_t i = 0; i < cfg.alphas.size(); ++i) {
                write_text_atomic(out_path(i), body);
                files.emplace_back(cfg.alphas[i], out_path(i));
            }
            write_text_atomic(cfg.output + ".gaps", gap_csv(gaps));
            write_text_atomic(cfg.output + ".gnuplot", bands_gnuplot(table));
            int open_count = 0;
            for (bool o : gaps.open) open_count += o ? 1 : 0;
            std::cout << "bands: " << open_count << " of " << gaps.gaps.size()
                      << " gaps open\n";
            summary.push_back({{"open_gaps", open_count}});
            break;
        }
        case Command::counting: {
            for (size_t i = 0; i < cfg.alphas.size(); ++i) {
                const auto est = counting_function(profile, cfg.alphas[i]);
                const std::string body = cfg.format == OutputFormat::csv
                                             ? counting_csv(est)
                                             : counting_json(est);
                write_text_atomic(out_path(i), body);
                files.emplace_back(cfg.alphas[i], out_path(i));
                summary.push_back({{"alpha", est.alpha},
                                   {"n_formula", est.n_formula},
                                   {"n_lower", est.n_lower},
                                   {"n_upper", est.n_upper},
                                   {"spread", est.spread}});
                std::cout << "counting: alpha = " << est.alpha
                          << ", formula " << est.n_formula << " in ["
                          << est.n_lower << ", " << est.n_upper << "]\n";
            }
            break;
        }
        case Command::transverse: {
            for (size_t i = 0; i < cfg.alphas.size(); ++i) {
                const double alpha = cfg.alphas[i];
                const auto cs = coupling_state(alpha);
                const double d = resolve_d(cfg, alpha);
                const double M = estimate_constants(profile, d).M;
                std::vector<TransverseEigenvalue> rows;
                rows.push_back(solve_dirichlet_root(cs, d));
                rows.push_back(solve_robin_root(cs, d, M));
                const std::string body = cfg.format == OutputFormat::csv
                                             ? transverse_csv(rows)
                                             : transverse_json(rows);
                write_text_atomic(out_path(i), body);
                files.emplace_back(alpha, out_path(i));
                summary.push_back({{"alpha", alpha},
                                   {"d", d},
                                   {"d_zeta", d * cs.zeta_alpha},
                                   {"log_gap_plus", rows[0].log_abs_gap},
                                   {"log_gap_minus", rows[1].log_abs_gap}});
                std::cout << "transverse: alpha = " << alpha
                          << ", log|t+ - xi| = " << rows[0].log_abs_gap
                          << ", log|t- - xi| = " << rows[1].log_abs_gap
                          << "\n";
            }
            break;
        }
        case Command::verify_bracketing: {
            for (size_t i = 0; i < cfg.alphas.size(); ++i) {
                const double alpha = cfg.alphas[i];
                const auto rep = squeeze_check(
                    profile, alpha, cfg.j_max,
                    cfg.d_fixed ? cfg.d_value : 0.0,
                    squeeze_bc(cfg, profile), cfg.n);
                const std::string body = cfg.format == OutputFormat::csv
                                             ? squeeze_csv(rep)
                                             : squeeze_json(rep);
                write_text_atomic(out_path(i), body);
                files.emplace_back(alpha, out_path(i));
                double width = 0.0;
                for (const auto& row : rep.rows)
                    width += (row.upper - row.lower) / rep.rows.size();
                summary.push_back({{"alpha", alpha},
                                   {"d", rep.d},
                                   {"all_pass", rep.all_pass},
                                   {"mean_width", width}});
                std::cout << squeeze_text(rep);
            }
            break;
        }
        case Command::semiclassical: {
            for (size_t i = 0; i < cfg.alphas.size(); ++i) {
                const auto view =
                    semiclassical_view(profile, cfg.alphas[i], cfg.h, cfg.bc,
                                       cfg.j_max, cfg.n);
                const std::string body = cfg.format == OutputFormat::csv
                                             ? semiclassical_csv(view)
                                             : semiclassical_json(view);
                write_text_atomic(out_path(i), body);
                files.emplace_back(cfg.alphas[i], out_path(i));
                summary.push_back(
                    {{"alpha", view.alpha},
                     {"alpha_of_h", view.alpha_of_h},
                     {"identity_defect",
                      view.xi_rescaled - view.xi_alpha}});
                std::cout << "semiclassical: alpha(h) = " << view.alpha_of_h
                          << ", counting = " << view.counting << "\n";
            }
            break;
        }
    }
    emit_sweep(cfg, files, summary);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"strong-coupling spectra of curve-supported singular "
                 "interactions"};
    std::string command, config_path;
    std::vector<std::string> sets;
    app.add_option("command", command,
                   "spectrum | bands | counting | transverse | "
                   "verify-bracketing | semiclassical")
        ->required();
    app.add_option("--config", config_path, "flat key = value config file")
        ->required();
    app.add_option("--set", sets, "override config entries (key=value)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        std::vector<std::string> overrides = sets;
        overrides.push_back("command=" + command);
        const RunConfig cfg = parse_config_file(config_path, overrides);
        return run(cfg);
    } catch (const Error& e) {
        nlohmann::json record;
        record["error"] = class_name(e.error_class());
        record["exit_code"] = e.exit_code();
        record["message"] = e.what();
        std::cerr << record.dump() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"internal\",\"message\":\"" << e.what()
                  << "\"}\n";
        return 1;
    }
}
