#include "leakywire/bracketing.hpp"

#include "leakywire/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace leakywire {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_cyclic(const CurvatureProfile& p) {
    return p.mode == CurveMode::loop || p.mode == CurveMode::periodic;
}

// Fourth-order first and second derivatives of a sampled function on a
// uniform grid; cyclic wrap for loops, shifted one-sided stencils at the ends
// otherwise.
void differentiate4(const std::vector<double>& f, double ds, bool cyclic,
                    std::vector<double>& d1, std::vector<double>& d2) {
    const int n = static_cast<int>(f.size());
    if (n < 6) throw ConfigError("curvature grid too small to differentiate");
    d1.assign(n, 0.0);
    d2.assign(n, 0.0);
    auto wrap = [&](int i) { return ((i % n) + n) % n; };
    for (int i = 0; i < n; ++i) {
        if (cyclic || (i >= 2 && i <= n - 3)) {
            const double fm2 = f[cyclic ? wrap(i - 2) : i - 2];
            const double fm1 = f[cyclic ? wrap(i - 1) : i - 1];
            const double fp1 = f[cyclic ? wrap(i + 1) : i + 1];
            const double fp2 = f[cyclic ? wrap(i + 2) : i + 2];
            d1[i] = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * ds);
            d2[i] = (-fp2 + 16.0 * fp1 - 30.0 * f[i] + 16.0 * fm1 - fm2) /
                    (12.0 * ds * ds);
        } else {
            // reflect the stencil for the right edge
            const int sgn = i < 2 ? 1 : -1;
            const int o = i < 2 ? i : n - 1 - i;
            auto g = [&](int m) { return f[i < 2 ? m : n - 1 - m]; };
            const double h1 = sgn * ds;
            if (o == 0) {
                d1[i] = (-25.0 * g(0) + 48.0 * g(1) - 36.0 * g(2) +
                         16.0 * g(3) - 3.0 * g(4)) / (12.0 * h1);
                d2[i] = (45.0 * g(0) - 154.0 * g(1) + 214.0 * g(2) -
                         156.0 * g(3) + 61.0 * g(4) - 10.0 * g(5)) /
                        (12.0 * ds * ds);
            } else {
                d1[i] = (-3.0 * g(0) - 10.0 * g(1) + 18.0 * g(2) -
                         6.0 * g(3) + g(4)) / (12.0 * h1);
                d2[i] = (10.0 * g(0) - 15.0 * g(1) - 4.0 * g(2) +
                         14.0 * g(3) - 6.0 * g(4) + g(5)) / (12.0 * ds * ds);
            }
        }
    }
}

void require_admissible(const CurvatureProfile& profile, double d) {
    if (!(d > 0.0)) throw ConfigError("tube radius must be positive");
    if (profile.grid.size() < 6)
        throw ConfigError("curvature profile needs at least 6 grid points");
    if (d * profile.kappa_sup >= 1.0)
        throw GeometryError("tube is not admissible: d * sup kappa >= 1");
}

} // namespace

TubeFactorField tube_factor_field(const CurvatureProfile& profile, double d,
                                  int nr, int nt,
                                  const std::vector<double>& beta) {
    require_admissible(profile, d);
    if (nr < 4 || nt < 8) throw ConfigError("tube grid too coarse");
    const int ns = static_cast<int>(profile.grid.size());
    if (!beta.empty() && static_cast<int>(beta.size()) != ns)
        throw ConfigError("beta grid must match the curvature grid");

    TubeFactorField f;
    f.d = d;
    f.ns = ns;
    f.nr = nr;
    f.nt = nt;
    f.s = profile.grid;
    f.beta = beta.empty() ? std::vector<double>(ns, 0.0) : beta;
    for (int ir = 0; ir < nr; ++ir) f.r.push_back(d * ir / nr);
    for (int it = 0; it < nt; ++it) f.theta.push_back(kTwoPi * it / nt);

    const double ds = profile.grid[1] - profile.grid[0];
    std::vector<double> k1, k2;
    differentiate4(profile.kappa, ds, is_cyclic(profile), k1, k2);

    const size_t total = static_cast<size_t>(ns) * nr * nt;
    f.h.resize(total);
    f.h_s.resize(total);
    f.h_ss.resize(total);
    size_t idx = 0;
    for (int is = 0; is < ns; ++is) {
        for (int ir = 0; ir < nr; ++ir) {
            for (int it = 0; it < nt; ++it, ++idx) {
                const double c = std::cos(f.theta[it] - f.beta[is]);
                const double rc = f.r[ir] * c;
                f.h[idx] = 1.0 + rc * profile.kappa[is];
                f.h_s[idx] = rc * k1[is];
                f.h_ss[idx] = rc * k2[is];
            }
        }
    }
    return f;
}

EffectivePotential effective_potential(const TubeFactorField& field,
                                       const CurvatureProfile& profile) {
    if (static_cast<int>(profile.kappa.size()) != field.ns)
        throw ConfigError("profile does not match the tube field grid");
    EffectivePotential out;
    out.V.resize(field.h.size());
    size_t idx = 0;
    for (int is = 0; is < field.ns; ++is) {
        const double k2 = profile.kappa[is] * profile.kappa[is];
        for (int ir = 0; ir < field.nr; ++ir) {
            for (int it = 0; it < field.nt; ++it, ++idx) {
                const double h = field.h[idx];
                const double hs = field.h_s[idx];
                const double hss = field.h_ss[idx];
                const double h2 = h * h;
                const double V = -k2 / (4.0 * h2) + hss / (2.0 * h2 * h) -
                                 5.0 * hs * hs / (4.0 * h2 * h2);
                out.V[idx] = V;
                out.sup_deviation =
                    std::max(out.sup_deviation, std::abs(V + 0.25 * k2));
            }
        }
    }
    return out;
}

TubeConstants estimate_constants(const CurvatureProfile& profile, double d,
                                 int nr, int nt,
                                 const std::vector<double>& beta) {
    const auto field = tube_factor_field(profile, d, nr, nt, beta);
    const auto pot = effective_potential(field, profile);

    TubeConstants c;
    c.d = d;
    double sup_h2dev = 0.0;
    for (double h : field.h)
        sup_h2dev = std::max(sup_h2dev, std::abs(1.0 / (h * h) - 1.0));
    c.C_h = sup_h2dev / d;
    c.C_V = pot.sup_deviation / d;
    c.v = 0.25 * profile.kappa_sup * profile.kappa_sup;

    // boundary trace g^{1/4} d/dr g^{-1/4} at r = d, backward fourth-order
    // differencing in r; M keeps only the curvature part (weight h alone),
    // the raw trace with the pure 1/(2r) radial term is informational
    const double delta = d / 64.0;
    for (int is = 0; is < field.ns; ++is) {
        for (int it = 0; it < field.nt; ++it) {
            const double kc =
                profile.kappa[is] * std::cos(field.theta[it] - field.beta[is]);
            double psi[5], phi[5];
            for (int m = 0; m < 5; ++m) {
                const double r = d - m * delta;
                const double h = 1.0 + r * kc;
                psi[m] = 1.0 / std::sqrt(h);
                phi[m] = 1.0 / std::sqrt(h * r);
            }
            auto backward4 = [&](const double* f) {
                return (25.0 * f[0] - 48.0 * f[1] + 36.0 * f[2] -
                        16.0 * f[3] + 3.0 * f[4]) / (12.0 * delta);
            };
            c.M = std::max(c.M, std::abs(backward4(psi) / psi[0]));
            c.raw_boundary_trace =
                std::max(c.raw_boundary_trace, std::abs(backward4(phi) / phi[0]));
        }
    }
    c.w_d = 0.5 - c.M * d;
    c.w_d_positive = c.w_d > 0.0;
    return c;
}

BracketPair longitudinal_bounds(const CurvatureProfile& profile,
                                const TubeConstants& consts,
                                BoundaryCondition bc, int j_max, int n) {
    if (j_max < 1) throw ConfigError("j_max must be positive");
    if (consts.C_h_minus() <= 0.0)
        throw RegimeError("tube radius too large for two-sided bounds "
                          "(1 - C_h d <= 0)");
    // L^{+/-} = C^{+/-} [ -d^2/ds^2 + (-kappa^2/4 +/- C_V d)/C^{+/-} ]:
    // rescale the potential of the plain operator, solve, scale back.
    // Richardson across n and 2n, matching eigenvalues().
    auto solve = [&](double C, double shift, int grid_n) {
        auto op = build_operator(profile, bc, grid_n);
        for (auto& p : op.potential) p = (p + shift) / C;
        auto mu = eigenvalues_raw(op, j_max).mu;
        for (auto& m : mu) m *= C;
        return mu;
    };
    BracketPair out;
    for (int side = 0; side < 2; ++side) {
        const double C = side == 0 ? consts.C_h_minus() : consts.C_h_plus();
        const double shift = (side == 0 ? -1.0 : 1.0) * consts.C_V * consts.d;
        const auto coarse = solve(C, shift, n);
        const auto fine = solve(C, shift, 2 * n);
        auto& dst = side == 0 ? out.lower : out.upper;
        for (int j = 0; j < j_max; ++j)
            dst.push_back((4.0 * fine[j] - coarse[j]) / 3.0);
    }
    return out;
}

SqueezeReport squeeze_check(const CurvatureProfile& profile, double alpha,
                            int j_max, double d, BoundaryCondition bc, int n) {
    SqueezeReport rep;
    rep.alpha = alpha;
    rep.d = d > 0.0 ? d : std::exp(std::numbers::pi * alpha);
    rep.j_max = j_max;

    const auto cs = coupling_state(alpha);
    rep.constants = estimate_constants(profile, rep.d);
    const auto tp = solve_dirichlet_root(cs, rep.d);
    const auto tm = solve_robin_root(cs, rep.d, rep.constants.M);
    rep.t_plus = tp.energy;
    rep.t_minus = tm.energy;

    const auto bounds = longitudinal_bounds(profile, rep.constants, bc, j_max, n);
    const auto mu = eigenvalues(build_operator(profile, bc, n), j_max).mu;

    rep.all_pass = true;
    for (int j = 0; j < j_max; ++j) {
        SqueezeRow row;
        row.j = j + 1;
        row.lower = bounds.lower[j] + rep.t_minus;
        row.center = cs.xi_alpha + mu[j];
        row.upper = bounds.upper[j] + rep.t_plus;
        const double tol = 1e-9 * std::abs(row.center);
        row.pass = row.lower <= row.center + tol && row.center <= row.upper + tol;
        row.bound_state = mu[j] < 0.0;
        rep.all_pass = rep.all_pass && row.pass;
        rep.n_bound += row.bound_state ? 1 : 0;
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace leakywire
