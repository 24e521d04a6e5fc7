#include "leakywire/transverse.hpp"
#include "leakywire/bessel.hpp"
#include "leakywire/errors.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace leakywire {

namespace {

constexpr double kLogTiny = -690.0; // below this, exp() underflows

// Scalar equation in deviation form. The root k of k = zeta*eta(k) is written
// k = zeta*(1 + sign*delta) with delta > 0; target(delta) returns the fixed
// point map value -sign*expm1(sign_of_exponent...) arranged so that the
// equation reads delta = target(delta) with target in (0, inf).
struct DeviationSolution {
    double delta;
    double log_delta;
    double residual; // |G| at the root, G(delta) = delta - target(delta)
    double bracket_lo, bracket_hi;
};

// Bisection to a coarse bracket followed by safeguarded Newton on
// G(delta) = delta - target(delta). dtarget is d(target)/d(delta).
DeviationSolution solve_deviation(const std::function<double(double)>& target,
                                  const std::function<double(double)>& dtarget,
                                  double hi) {
    auto G = [&](double x) { return x - target(x); };

    double lo = 0.0;
    if (!(G(lo) <= 0.0) || !(G(hi) > 0.0))
        throw SolverError("transverse root: no sign change in search bracket");

    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        if (G(mid) <= 0.0)
            lo = mid;
        else
            hi = mid;
    }

    // monotonicity of the residual function on the final bracket (the
    // uniqueness argument made executable)
    {
        double prev = G(lo);
        for (int i = 1; i <= 64; ++i) {
            const double x = lo + (hi - lo) * i / 64.0;
            const double g = G(x);
            if (g < prev - 1e-14 * (1.0 + std::abs(g)))
                throw SolverError("transverse root: residual not monotone on bracket");
            prev = g;
        }
    }

    double x = 0.5 * (lo + hi);
    double g = G(x);
    for (int it = 0; it < 80 && g != 0.0; ++it) {
        const double gp = 1.0 - dtarget(x);
        double xn = (gp != 0.0) ? x - g / gp : -1.0;
        if (!(xn >= lo && xn <= hi)) xn = 0.5 * (lo + hi); // bisection fallback
        const double gn = G(xn);
        if (gn <= 0.0)
            lo = xn;
        else
            hi = xn;
        if (std::abs(gn) >= std::abs(g) && std::abs(xn - x) < 1e-16 * (1.0 + x)) {
            x = xn;
            g = gn;
            break;
        }
        x = xn;
        g = gn;
    }

    DeviationSolution out{};
    out.delta = x;
    out.log_delta = std::log(x);
    out.residual = std::abs(g);
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    return out;
}

} // namespace

CouplingState coupling_state(double alpha) {
    if (!std::isfinite(alpha) || std::abs(alpha) > 50.0)
        throw RegimeError("coupling_state: |alpha| beyond overflow guard (50)");
    CouplingState cs{};
    cs.alpha = alpha;
    const double e = -2.0 * std::numbers::pi * alpha + kPsiOne;
    cs.zeta_alpha = 2.0 * std::exp(e);
    cs.xi_alpha = -4.0 * std::exp(2.0 * e);
    return cs;
}

TransverseEigenvalue solve_dirichlet_root(const CouplingState& cs, double d) {
    if (!(d > 0.0)) throw GeometryError("solve_dirichlet_root: tube radius must be positive");
    const double zeta = cs.zeta_alpha;
    const double z0 = d * zeta;
    const double g_ad = 0.5 * std::exp(-kPsiOne) * z0;
    if (!(g_ad > 1.0))
        throw RegimeError("solve_dirichlet_root: solvability condition g_{alpha,d} > 1 "
                          "violated (coupling too weak for this d)");

    auto log_rho = [](double z) {
        const auto b = bessel_quad_scaled(z);
        return -2.0 * z + std::log(b.k0s) - std::log(b.i0s);
    };

    TransverseEigenvalue out{};
    out.variant = TransverseVariant::dirichlet_plus;
    out.d = d;
    out.M = 0.0;
    out.zeta = zeta;

    const double lr0 = log_rho(z0);
    double delta, log_delta, residual, blo, bhi;
    if (lr0 < kLogTiny) {
        // rho underflows; the fixed point collapses onto the first iterate
        delta = 0.0;
        log_delta = lr0;
        residual = 0.0;
        blo = bhi = 0.0;
    } else {
        auto target = [&](double x) {
            // delta = 1 - exp(-rho(k d)), k = zeta*(1-x)
            const double z = z0 * (1.0 - x);
            return -std::expm1(-std::exp(log_rho(z)));
        };
        auto dtarget = [&](double x) {
            const double z = z0 * (1.0 - x);
            const auto b = bessel_quad_scaled(z);
            const double rho = std::exp(log_rho(z));
            // d rho/dz = -1/(z I0^2) by the Wronskian
            const double drho = -std::exp(-2.0 * z) / (z * b.i0s * b.i0s);
            return std::exp(-rho) * drho * (-z0);
        };
        const auto sol = solve_deviation(target, dtarget, 1.0 - 1e-9);
        delta = sol.delta;
        log_delta = sol.log_delta;
        residual = sol.residual * zeta;
        blo = sol.bracket_lo;
        bhi = sol.bracket_hi;
    }

    out.k_root = zeta * (1.0 - delta);
    out.energy_gap = zeta * zeta * delta * (2.0 - delta);
    out.log_abs_gap = 2.0 * std::log(zeta) + std::log(2.0 - delta) + log_delta;
    out.energy = cs.xi_alpha + out.energy_gap;
    out.residual = residual;
    out.bracket_lo = zeta * (1.0 - bhi);
    out.bracket_hi = zeta * (1.0 - blo);
    return out;
}

TransverseEigenvalue solve_robin_root(const CouplingState& cs, double d, double M) {
    if (!(d > 0.0)) throw GeometryError("solve_robin_root: tube radius must be positive");
    if (!(M >= 0.0)) throw RegimeError("solve_robin_root: Robin coefficient must be nonnegative");
    const double w = 0.5 - M * d;
    if (!(w > 0.0))
        throw RegimeError("solve_robin_root: w_d = 1/2 - M d must be positive");
    const double zeta = cs.zeta_alpha;
    const double z0 = d * zeta;
    if (!(z0 > 0.5))
        throw RegimeError("solve_robin_root: d zeta too small for the strong-coupling regime");

    // log of  exp(-S_K/S_I) exponent:  gt(z) = -S_K(z)/S_I(z) > 0
    auto log_gt = [&](double z) {
        const auto b = bessel_quad_scaled(z);
        const double num = z * b.k1s - w * b.k0s;
        const double den = z * b.i1s + w * b.i0s;
        if (!(num > 0.0) || !(den > 0.0))
            throw RegimeError("solve_robin_root: outside the strong-coupling regime");
        return -2.0 * z + std::log(num) - std::log(den);
    };

    TransverseEigenvalue out{};
    out.variant = TransverseVariant::robin_minus;
    out.d = d;
    out.M = M;
    out.zeta = zeta;

    const double lg0 = log_gt(z0);
    double delta, log_delta, residual, blo, bhi;
    if (lg0 < kLogTiny) {
        delta = 0.0;
        log_delta = lg0;
        residual = 0.0;
        blo = bhi = 0.0;
    } else {
        auto target = [&](double x) {
            const double z = z0 * (1.0 + x);
            return std::expm1(std::exp(log_gt(z)));
        };
        auto dtarget = [&](double x) {
            const double z = z0 * (1.0 + x);
            const auto b = bessel_quad_scaled(z);
            const double e2 = std::exp(-2.0 * z);
            const double num = z * b.k1s - w * b.k0s;  // = -e^{z} S_K
            const double den = z * b.i1s + w * b.i0s;  // =  e^{-z} S_I
            // S_K' = z K0 - w K1, S_I' = z I0 + w I1
            const double dnum = -(z * b.k0s - w * b.k1s); // -e^{z} S_K'
            const double dden = z * b.i0s + w * b.i1s;    //  e^{-z} S_I'
            // d/dz of gt = -S_K/S_I
            const double dgt = e2 * (dnum * den - num * dden) / (den * den) -
                               2.0 * e2 * num / den;
            const double gt = e2 * num / den;
            return std::exp(gt) * dgt * z0;
        };
        double hi = 19.0; // search window [zeta, 20 zeta], enlarged on failure
        auto G = [&](double x) { return x - target(x); };
        int tries = 0;
        while (!(G(hi) > 0.0)) {
            hi *= 5.0;
            if (++tries > 4)
                throw RegimeError("solve_robin_root: no sign change in search window");
        }
        const auto sol = solve_deviation(target, dtarget, hi);
        delta = sol.delta;
        log_delta = sol.log_delta;
        residual = sol.residual * zeta;
        blo = sol.bracket_lo;
        bhi = sol.bracket_hi;
    }

    out.k_root = zeta * (1.0 + delta);
    out.energy_gap = -zeta * zeta * delta * (2.0 + delta);
    out.log_abs_gap = 2.0 * std::log(zeta) + std::log(2.0 + delta) + log_delta;
    out.energy = cs.xi_alpha + out.energy_gap;
    out.residual = residual;
    out.bracket_lo = zeta * (1.0 + blo);
    out.bracket_hi = zeta * (1.0 + bhi);
    return out;
}

EnvelopeEstimate envelope(const CouplingState& cs, double d, double c1, double c2) {
    if (!(c1 > 0.0) || !(c2 > 0.0))
        throw SolverError("envelope: constants must be positive");
    if (!(d > 0.0)) throw GeometryError("envelope: tube radius must be positive");
    EnvelopeEstimate e{};
    e.c1 = c1;
    e.c2 = c2;
    e.d = d;
    e.zeta = cs.zeta_alpha;
    const double dz = d * cs.zeta_alpha;
    e.value = c1 * cs.zeta_alpha * cs.zeta_alpha * std::sqrt(dz) * std::exp(-c2 * dz);
    return e;
}

EnvelopeFit fit_envelope(const std::vector<TransverseEigenvalue>& solutions) {
    if (solutions.size() < 2)
        throw SolverError("fit_envelope: need at least two solutions");
    const int n = static_cast<int>(solutions.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double rx = 0, ry = 0, rxx = 0, rxy = 0;
    for (const auto& t : solutions) {
        const double dz = t.d * t.zeta;
        const double y = t.log_abs_gap - 2.0 * std::log(t.zeta) - 0.5 * std::log(dz);
        sx += dz;
        sy += y;
        sxx += dz * dz;
        sxy += dz * y;
        rx += dz;
        ry += t.log_abs_gap;
        rxx += dz * dz;
        rxy += dz * t.log_abs_gap;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    EnvelopeFit f{};
    f.c2 = -slope;
    f.c1 = std::exp(intercept);
    f.raw_slope = (n * rxy - rx * ry) / (n * rxx - rx * rx);
    return f;
}

} // namespace leakywire
