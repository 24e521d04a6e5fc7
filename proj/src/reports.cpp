#include "leakywire/reports.hpp"

#include "leakywire/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace leakywire {

namespace {

using nlohmann::json;

const char* bc_name(BoundaryCondition bc) {
    switch (bc) {
        case BoundaryCondition::periodic: return "periodic";
        case BoundaryCondition::dirichlet: return "dirichlet";
        case BoundaryCondition::neumann: return "neumann";
        case BoundaryCondition::floquet: return "floquet";
        case BoundaryCondition::whole_line_truncated: return "whole-line";
    }
    return "?";
}

} // namespace

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path dir =
        target.has_parent_path() ? target.parent_path() : fs::path(".");
    std::error_code ec;
    if (!fs::exists(dir, ec))
        throw IoError("output directory does not exist: " + dir.string());
    const fs::path tmp = dir / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out) throw IoError("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw IoError("cannot rename '" + tmp.string() + "' to '" + path +
                      "': " + ec.message());
    }
}

std::string spectrum_csv(const SpectrumResult& res) {
    std::ostringstream out;
    out << "j,mu,refine_error\n";
    for (size_t j = 0; j < res.mu.size(); ++j) {
        const double err = j < res.refine_error.size() ? res.refine_error[j] : 0.0;
        out << (j + 1) << ',' << format_g17(res.mu[j]) << ','
            << format_g17(err) << '\n';
    }
    return out.str();
}

std::string bands_csv(const BandTable& table) {
    std::ostringstream out;
    out << "theta,j,mu\n";
    for (size_t m = 0; m < table.thetas.size(); ++m)
        for (size_t j = 0; j < table.bands[m].size(); ++j)
            out << format_g17(table.thetas[m]) << ',' << (j + 1) << ','
                << format_g17(table.bands[m][j]) << '\n';
    return out.str();
}

std::string squeeze_csv(const SqueezeReport& report) {
    std::ostringstream out;
    out << "j,lower,center,upper,pass\n";
    for (const auto& row : report.rows)
        out << row.j << ',' << format_g17(row.lower) << ','
            << format_g17(row.center) << ',' << format_g17(row.upper) << ','
            << (row.pass ? 1 : 0) << '\n';
    return out.str();
}

std::string counting_csv(const CountingEstimate& est) {
    std::ostringstream out;
    out << "alpha,L,v,n_formula,n_lower,n_upper,spread\n";
    out << format_g17(est.alpha) << ',' << format_g17(est.L) << ','
        << format_g17(est.v) << ',' << format_g17(est.n_formula) << ','
        << est.n_lower << ',' << est.n_upper << ',' << format_g17(est.spread)
        << '\n';
    return out.str();
}

std::string transverse_csv(const std::vector<TransverseEigenvalue>& rows) {
    std::ostringstream out;
    out << "variant,d,M,zeta,k_root,energy,energy_gap,log_abs_gap,residual\n";
    for (const auto& r : rows) {
        out << (r.variant == TransverseVariant::dirichlet_plus ? "dirichlet_plus"
                                                               : "robin_minus")
            << ',' << format_g17(r.d) << ',' << format_g17(r.M) << ','
            << format_g17(r.zeta) << ',' << format_g17(r.k_root) << ','
            << format_g17(r.energy) << ',' << format_g17(r.energy_gap) << ','
            << format_g17(r.log_abs_gap) << ',' << format_g17(r.residual)
            << '\n';
    }
    return out.str();
}

std::string semiclassical_csv(const SemiclassicalView& view) {
    std::ostringstream out;
    out << "j,expansion,rescaled,difference\n";
    for (const auto& r : view.rows)
        out << r.j << ',' << format_g17(r.expansion) << ','
            << format_g17(r.rescaled) << ',' << format_g17(r.difference)
            << '\n';
    return out.str();
}

std::string gap_csv(const GapReport& rep) {
    std::ostringstream out;
    out << "j,gap,open\n";
    for (size_t j = 0; j < rep.gaps.size(); ++j)
        out << (j + 1) << ',' << format_g17(rep.gaps[j]) << ','
            << (rep.open[j] ? 1 : 0) << '\n';
    return out.str();
}

std::string spectrum_json(const SpectrumResult& res) {
    json j;
    j["bc"] = bc_name(res.bc);
    j["n"] = res.n;
    j["n_negative"] = res.n_negative;
    j["mu"] = res.mu;
    j["refine_error"] = res.refine_error;
    return j.dump(2) + "\n";
}

std::string bands_json(const BandTable& table, const GapReport& gaps) {
    json j;
    j["K"] = table.K;
    j["thetas"] = table.thetas;
    j["bands"] = table.bands;
    j["gaps"] = gaps.gaps;
    j["open"] = gaps.open;
    j["gap_tol"] = gaps.gap_tol;
    return j.dump(2) + "\n";
}

std::string squeeze_json(const SqueezeReport& report) {
    json rows = json::array();
    for (const auto& r : report.rows)
        rows.push_back({{"j", r.j},
                        {"lower", r.lower},
                        {"center", r.center},
                        {"upper", r.upper},
                        {"pass", r.pass},
                        {"bound_state", r.bound_state}});
    json j;
    j["alpha"] = report.alpha;
    j["d"] = report.d;
    j["t_minus"] = report.t_minus;
    j["t_plus"] = report.t_plus;
    j["all_pass"] = report.all_pass;
    j["n_bound"] = report.n_bound;
    j["rows"] = rows;
    j["constants"] = {{"C_h", report.constants.C_h},
                      {"C_V", report.constants.C_V},
                      {"M", report.constants.M},
                      {"v", report.constants.v},
                      {"w_d", report.constants.w_d}};
    return j.dump(2) + "\n";
}

std::string counting_json(const CountingEstimate& est) {
    json j;
    j["alpha"] = est.alpha;
    j["L"] = est.L;
    j["v"] = est.v;
    j["n_formula"] = est.n_formula;
    j["n_lower"] = est.n_lower;
    j["n_upper"] = est.n_upper;
    j["spread"] = est.spread;
    return j.dump(2) + "\n";
}

std::string transverse_json(const std::vector<TransverseEigenvalue>& rows) {
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"variant", r.variant == TransverseVariant::dirichlet_plus
                                       ? "dirichlet_plus"
                                       : "robin_minus"},
                       {"d", r.d},
                       {"M", r.M},
                       {"zeta", r.zeta},
                       {"k_root", r.k_root},
                       {"energy", r.energy},
                       {"energy_gap", r.energy_gap},
                       {"log_abs_gap", r.log_abs_gap},
                       {"residual", r.residual}});
    json j;
    j["rows"] = arr;
    return j.dump(2) + "\n";
}

std::string semiclassical_json(const SemiclassicalView& view) {
    json rows = json::array();
    for (const auto& r : view.rows)
        rows.push_back({{"j", r.j},
                        {"expansion", r.expansion},
                        {"rescaled", r.rescaled},
                        {"difference", r.difference}});
    json j;
    j["alpha"] = view.alpha;
    j["h"] = view.h;
    j["alpha_of_h"] = view.alpha_of_h;
    j["xi_alpha"] = view.xi_alpha;
    j["xi_rescaled"] = view.xi_rescaled;
    j["counting"] = view.counting;
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

std::string squeeze_text(const SqueezeReport& report) {
    std::ostringstream out;
    out << "two-sided eigenvalue certification\n"
        << "alpha = " << format_g17(report.alpha)
        << ", d = " << format_g17(report.d) << "\n"
        << "t- = " << format_g17(report.t_minus)
        << ", t+ = " << format_g17(report.t_plus) << "\n";
    out << "  j            lower           center            upper  pass\n";
    for (const auto& row : report.rows) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%3d %16.9e %16.9e %16.9e  %s\n", row.j,
                      row.lower, row.center, row.upper,
                      row.pass ? "yes" : "NO");
        out << buf;
    }
    out << (report.all_pass ? "all rows pass\n" : "SOME ROWS FAIL\n");
    return out.str();
}

std::string bands_gnuplot(const BandTable& table) {
    std::ostringstream out;
    out << "# theta";
    for (size_t j = 0; j < (table.bands.empty() ? 0 : table.bands[0].size()); ++j)
        out << " band" << (j + 1);
    out << '\n';
    for (size_t m = 0; m < table.thetas.size(); ++m) {
        out << format_g17(table.thetas[m]);
        for (double v : table.bands[m]) out << ' ' << format_g17(v);
        out << '\n';
    }
    return out.str();
}

} // namespace leakywire
