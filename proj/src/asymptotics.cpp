#include "leakywire/asymptotics.hpp"

#include "leakywire/errors.hpp"
#include "leakywire/transverse.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace leakywire {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_cyclic(const CurvatureProfile& p) {
    return p.mode == CurveMode::loop || p.mode == CurveMode::periodic;
}

} // namespace

AsymptoticSpectrum eigenvalue_asymptotics(const CurvatureProfile& profile,
                                          double alpha, BoundaryCondition bc,
                                          int j_max, bool with_brackets,
                                          int n) {
    const auto cs = coupling_state(alpha);
    AsymptoticSpectrum out;
    out.alpha = alpha;
    out.bc = bc;
    out.threshold = cs.xi_alpha;

    if (profile.mode == CurveMode::infinite_truncated) {
        const auto res = infinite_curve_spectrum(profile, j_max, std::max(n, 2048));
        out.n_negative = res.n_negative;
        for (size_t j = 0; j < res.mu.size(); ++j) {
            AsymptoticRow row;
            row.j = static_cast<int>(j) + 1;
            row.lambda = cs.xi_alpha + res.mu[j];
            row.pair_lower = row.pair_upper = row.lambda;
            out.rows.push_back(row);
        }
        return out;
    }

    if (profile.mode == CurveMode::open) {
        // free ends: the asymptotics only pin lambda_j between the neumann
        // and dirichlet closures, so a single-valued closure is refused
        if (bc != BoundaryCondition::dirichlet && bc != BoundaryCondition::neumann)
            throw ConfigError("free-end curves admit only the two-sided "
                              "dirichlet/neumann band, not a single closure");
        const auto muN =
            eigenvalues(build_operator(profile, BoundaryCondition::neumann, n), j_max).mu;
        const auto muD =
            eigenvalues(build_operator(profile, BoundaryCondition::dirichlet, n), j_max).mu;
        for (int j = 0; j < j_max; ++j) {
            AsymptoticRow row;
            row.j = j + 1;
            row.pair_lower = cs.xi_alpha + muN[j];
            row.pair_upper = cs.xi_alpha + muD[j];
            row.lambda = 0.5 * (row.pair_lower + row.pair_upper);
            row.two_sided = true;
            if (row.lambda < 0.0) out.rows.push_back(row);
        }
        out.n_negative = static_cast<int>(out.rows.size());
        return out;
    }

    const auto mu = eigenvalues(build_operator(profile, bc, n), j_max).mu;
    SqueezeReport squeeze;
    if (with_brackets) {
        squeeze = squeeze_check(profile, alpha, j_max, 0.0, bc, n);
        out.d_used = squeeze.d;
    }
    for (int j = 0; j < j_max; ++j) {
        AsymptoticRow row;
        row.j = j + 1;
        row.lambda = cs.xi_alpha + mu[j];
        row.pair_lower = row.pair_upper = row.lambda;
        if (with_brackets) {
            row.bracket_lower = squeeze.rows[j].lower;
            row.bracket_upper = squeeze.rows[j].upper;
            row.has_bracket = true;
        }
        if (row.lambda < 0.0) out.rows.push_back(row);
    }
    out.n_negative = static_cast<int>(out.rows.size());
    return out;
}

CountingEstimate counting_function(const CurvatureProfile& profile, double alpha) {
    if (profile.mode == CurveMode::infinite_truncated)
        throw ConfigError("counting_function requires a finite curve");
    const auto cs = coupling_state(alpha);
    CountingEstimate est;
    est.alpha = alpha;
    est.L = profile.L;
    est.v = 0.25 * profile.kappa_sup * profile.kappa_sup;
    est.n_formula = profile.L / kPi * cs.zeta_alpha;

    const double xi = cs.xi_alpha;
    if (is_cyclic(profile)) {
        // nu_k^{+/-} = xi + k^2 (2 pi/L)^2 +/- v over k in Z (multiplicity two
        // for k != 0): count k^2 < (-xi -/+ v) (L/2 pi)^2
        auto count = [&](double level) -> long long {
            if (level <= 0.0) return 0;
            const double kmax = std::floor(profile.L / (2.0 * kPi) * std::sqrt(level));
            return 1 + 2 * static_cast<long long>(kmax);
        };
        est.n_lower = count(-xi - est.v);
        est.n_upper = count(-xi + est.v);
    } else {
        // free ends: coefficient (pi/L)^2 with shifted indices j^+ = j,
        // j^- = j - 1 (j >= 1)
        auto root = [&](double level) {
            return level <= 0.0 ? -1.0
                                : profile.L / kPi * std::sqrt(level);
        };
        const double rp = root(-xi - est.v);
        const double rm = root(-xi + est.v);
        est.n_lower = rp < 0.0 ? 0 : static_cast<long long>(std::floor(rp));
        est.n_upper = rm < 0.0 ? 0 : 1 + static_cast<long long>(std::floor(rm));
    }
    est.spread = (est.n_upper - est.n_lower) / est.n_formula;
    return est;
}

BandTable band_table_with_edges(const CurvatureProfile& profile, double K,
                                int theta_count, int j_max, int n) {
    BandTable table = floquet_spectrum(profile, K, theta_count, j_max, n);
    const double edge = kPi / K;
    const double delta = 2.0 * edge / 1e6; // zone width / 1e6
    for (double theta : {edge - 2.0 * delta, edge - delta}) {
        const std::complex<double> phase =
            std::exp(std::complex<double>(0.0, theta * K));
        const auto op = build_operator(profile, BoundaryCondition::floquet, n, phase);
        table.thetas.push_back(theta);
        table.bands.push_back(eigenvalues(op, j_max).mu);
    }
    return table;
}

GapReport gap_widths(const BandTable& bands) {
    if (bands.thetas.size() < 3 || bands.bands.size() != bands.thetas.size())
        throw ConfigError("band table too small for gap extraction");
    const double edge = kPi / bands.K;

    int i_zero = -1;
    int i_e1 = -1, i_e2 = -1; // the two samples closest to the zone edge
    for (size_t i = 0; i < bands.thetas.size(); ++i) {
        const double t = bands.thetas[i];
        if (std::abs(t) < 1e-12 * (1.0 + edge)) i_zero = static_cast<int>(i);
        if (t > edge * (1.0 - 1e-3) && t < edge) {
            if (i_e2 < 0 || t > bands.thetas[i_e2]) {
                i_e1 = i_e2;
                i_e2 = static_cast<int>(i);
            } else if (i_e1 < 0 || t > bands.thetas[i_e1]) {
                i_e1 = static_cast<int>(i);
            }
        }
    }
    if (i_zero < 0 || i_e1 < 0 || i_e2 < 0)
        throw ConfigError("missing band-edge theta samples (need theta = 0 and "
                          "two points just inside pi/K)");

    const double t1 = bands.thetas[i_e1], t2 = bands.thetas[i_e2];
    const auto& v1 = bands.bands[i_e1];
    const auto& v2 = bands.bands[i_e2];
    const int nb = static_cast<int>(v1.size());
    // linear limit onto the half-open zone edge: exact for the conical
    // crossings of closed gaps, O(delta^2) at quadratic band extrema
    std::vector<double> at_edge(nb);
    for (int j = 0; j < nb; ++j)
        at_edge[j] = v2[j] + (v2[j] - v1[j]) * (edge - t2) / (t2 - t1);
    const auto& at_zero = bands.bands[i_zero];

    GapReport rep;
    for (int j = 1; j < nb; ++j) {
        const bool odd = j % 2 == 1;
        const double g = odd ? at_edge[j] - at_edge[j - 1]
                             : at_zero[j] - at_zero[j - 1];
        rep.gaps.push_back(g);
        rep.open.push_back(g > rep.gap_tol);
    }
    return rep;
}

SemiclassicalView semiclassical_view(const CurvatureProfile& profile,
                                     double alpha, double h,
                                     BoundaryCondition bc, int j_max, int n) {
    if (!(h > 0.0) || h > 1.0)
        throw ConfigError("semiclassical parameter h must lie in (0, 1]");
    SemiclassicalView view;
    view.alpha = alpha;
    view.h = h;
    view.alpha_of_h = alpha + std::log(h) / (2.0 * kPi);

    const auto cs = coupling_state(alpha);
    const auto cs_h = coupling_state(view.alpha_of_h); // regime check included
    view.xi_alpha = cs.xi_alpha;
    view.xi_rescaled = h * h * cs_h.xi_alpha;

    const auto mu = eigenvalues(build_operator(profile, bc, n), j_max).mu;
    for (int j = 0; j < j_max; ++j) {
        SemiclassicalRow row;
        row.j = j + 1;
        row.expansion = cs.xi_alpha + mu[j] * h * h;
        row.rescaled = h * h * (cs_h.xi_alpha + mu[j]);
        row.difference = row.expansion - row.rescaled;
        view.rows.push_back(row);
    }
    view.counting = profile.L / (kPi * h) * cs.zeta_alpha;
    return view;
}

} // namespace leakywire
