#include "leakywire/bessel.hpp"
#include "leakywire/errors.hpp"

#include <cmath>
#include <numbers>

namespace leakywire {

namespace {

constexpr double kEps = 1e-17;

// Ascending series for I0 and I1; all terms positive, no cancellation.
// Usable up to the crossover at x = 30 (and well beyond).
void i_series(double x, double& i0, double& i1) {
    const double q = 0.25 * x * x;
    double t0 = 1.0, s0 = 1.0;
    double t1 = 1.0, s1 = 1.0;
    for (int k = 1; k < 400; ++k) {
        t0 *= q / (static_cast<double>(k) * k);
        s0 += t0;
        t1 *= q / (static_cast<double>(k) * (k + 1.0));
        s1 += t1;
        if (t0 < kEps * s0 && t1 < kEps * s1) break;
    }
    i0 = s0;
    i1 = 0.5 * x * s1;
}

// Hankel asymptotic series for I0, I1 without the e^x/sqrt(2*pi*x) prefactor.
void i_asymptotic_tail(double x, double& p0, double& p1) {
    // term_k(mu) = prod_{j<=k} (mu - (2j-1)^2) / (k! (8x)^k), with the
    // alternating sign folded in for the I-type expansion.
    double t0 = 1.0, t1 = 1.0;
    double s0 = 1.0, s1 = 1.0;
    double prev0 = 1.0, prev1 = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double f = 1.0 / (8.0 * x * k);
        t0 *= -(0.0 - odd * odd) * f; // mu = 0
        t1 *= -(4.0 - odd * odd) * f; // mu = 4
        if (std::abs(t0) > prev0 || std::abs(t1) > prev1) break; // divergent tail
        s0 += t0;
        s1 += t1;
        prev0 = std::abs(t0);
        prev1 = std::abs(t1);
        if (prev0 < kEps && prev1 < kEps) break;
    }
    p0 = s0;
    p1 = s1;
}

// Log-paired ascending series for K0, K1; accurate for x < 2 where the
// cancellation against the I-series terms is harmless.
void k_series(double x, double i0, double i1, double& k0, double& k1) {
    const double q = 0.25 * x * x;
    const double lg = std::log(0.5 * x);

    double t = 1.0, hk = 0.0, s = 0.0;
    for (int k = 1; k < 60; ++k) {
        t *= q / (static_cast<double>(k) * k);
        hk += 1.0 / k;
        s += t * hk;
        if (t * hk < kEps * (std::abs(s) + 1.0)) break;
    }
    k0 = -(lg - kPsiOne) * i0 + s;

    // DLMF 10.31.2 with n = 1.
    double u = 1.0;          // (x^2/4)^k / (k! (k+1)!)
    double h1 = 0.0, h2 = 1.0; // H_k, H_{k+1}
    double s1 = (h1 + h2 - 2.0 * (-kPsiOne));
    for (int k = 1; k < 60; ++k) {
        u *= q / (static_cast<double>(k) * (k + 1.0));
        h1 += 1.0 / k;
        h2 += 1.0 / (k + 1.0);
        const double term = u * (h1 + h2 - 2.0 * (-kPsiOne));
        s1 += term;
        if (std::abs(term) < kEps * (std::abs(s1) + 1.0)) break;
    }
    k1 = 1.0 / x + lg * i1 - 0.25 * x * s1;
}

// Steed-type continued fraction (Thompson & Barnett) for the K pair at x >= 2.
// Returns the scaled values e^x K0 and e^x K1; machine accurate there.
void k_continued_fraction(double x, double& k0s, double& k1s) {
    const double a1 = 0.25; // 1/4 - mu^2, mu = 0
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    double q = a1, c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i < 40000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kEps) break;
    }
    h = a1 * h;
    k0s = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
    k1s = k0s * (x + 0.5 - h) / x;
}

double branch_disagreement() {
    // Disagreement of the two K branches and the two I branches at their
    // crossovers; conservative common accuracy estimate.
    static const double est = [] {
        double i0a, i1a, i0b, i1b;
        i_series(30.0, i0a, i1a);
        i_asymptotic_tail(30.0, i0b, i1b);
        const double pref = std::exp(30.0) / std::sqrt(2.0 * std::numbers::pi * 30.0);
        double e = std::abs(i0a - pref * i0b) / i0a;
        e = std::max(e, std::abs(i1a - pref * i1b) / i1a);

        double i0, i1, k0, k1, k0s, k1s;
        i_series(2.0, i0, i1);
        k_series(2.0, i0, i1, k0, k1);
        k_continued_fraction(2.0, k0s, k1s);
        const double em2 = std::exp(-2.0);
        e = std::max(e, std::abs(k0 - em2 * k0s) / k0);
        e = std::max(e, std::abs(k1 - em2 * k1s) / k1);
        return e + 4.0e-16;
    }();
    return est;
}

} // namespace

BesselQuad bessel_quad(double x) {
    if (!(x > 0.0)) throw SolverError("bessel_quad: argument must be positive");
    if (x > 700.0) throw SolverError("bessel_quad: argument beyond overflow guard (700)");

    BesselQuad out{};
    out.x = x;

    if (x <= 30.0) {
        i_series(x, out.i0, out.i1);
    } else {
        double p0, p1;
        i_asymptotic_tail(x, p0, p1);
        const double pref = std::exp(x) / std::sqrt(2.0 * std::numbers::pi * x);
        out.i0 = pref * p0;
        out.i1 = pref * p1;
    }

    if (x < 2.0) {
        double i0 = out.i0, i1 = out.i1;
        k_series(x, i0, i1, out.k0, out.k1);
    } else {
        double k0s, k1s;
        k_continued_fraction(x, k0s, k1s);
        const double ex = std::exp(-x);
        out.k0 = ex * k0s;
        out.k1 = ex * k1s;
    }

    out.est_error = branch_disagreement();
    return out;
}

BesselQuadScaled bessel_quad_scaled(double x) {
    if (!(x > 0.0)) throw SolverError("bessel_quad_scaled: argument must be positive");

    BesselQuadScaled out{};
    out.x = x;
    if (x <= 30.0) {
        double i0, i1;
        i_series(x, i0, i1);
        const double ex = std::exp(-x);
        out.i0s = ex * i0;
        out.i1s = ex * i1;
    } else {
        double p0, p1;
        i_asymptotic_tail(x, p0, p1);
        const double pref = 1.0 / std::sqrt(2.0 * std::numbers::pi * x);
        out.i0s = pref * p0;
        out.i1s = pref * p1;
    }
    if (x < 2.0) {
        double i0, i1, k0, k1;
        i_series(x, i0, i1);
        k_series(x, i0, i1, k0, k1);
        const double ex = std::exp(x);
        out.k0s = ex * k0;
        out.k1s = ex * k1;
    } else {
        k_continued_fraction(x, out.k0s, out.k1s);
    }
    return out;
}

} // namespace leakywire
