// Independent numerical oracles used by the test suites. Everything in this
// header is deliberately decoupled from the library implementation paths it
// is used to check.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

// --- Modified Bessel functions via integral representations -----------------
// I_n(x) = (1/pi) \int_0^pi e^{x cos t} cos(n t) dt
// K_n(x) = \int_0^infty e^{-x cosh t} cosh(n t) dt
// Both integrands extend to smooth even (resp. rapidly decaying entire)
// functions, so plain trapezoidal sums converge to machine precision.

inline double bessel_i(int n, double x) {
    // The constant and linear parts of e^{x cos t} are integrated in closed
    // form (they contribute exactly delta_{n0} and (x/2) delta_{n1}); summing
    // only the remainder avoids the catastrophic cancellation the plain sum
    // suffers for small x, where I_1(x) = O(x) emerges from O(1) terms.
    const double pi = 3.14159265358979323846;
    const int m = 4000;
    const double h = pi / m;
    auto f = [&](double t) {
        const double c = std::cos(t);
        return (std::expm1(x * c) - x * c) * std::cos(n * t);
    };
    double s = 0.5 * (f(0.0) + f(pi));
    for (int k = 1; k < m; ++k) s += f(k * h);
    return (n == 0 ? 1.0 : 0.0) + (n == 1 ? 0.5 * x : 0.0) + s * h / pi;
}

inline double bessel_k(int n, double x) {
    const double h = 1.0e-2;
    double s = 0.5 * std::exp(-x); // t = 0 term, cosh(0) = 1
    for (int k = 1;; ++k) {
        const double t = k * h;
        const double e = -x * std::cosh(t);
        if (e < -745.0) break;
        s += std::exp(e) * std::cosh(n * t);
        if (k > 2000000) throw std::runtime_error("bessel_k oracle: no decay");
    }
    return s * h;
}

// --- Hill / Sturm-Liouville shooting ----------------------------------------
// Integrates -u'' + V(s) u = lambda u over [0, L] with classical RK4 and
// returns the monodromy matrix columns: (u1, u1', u2, u2') where
// u1(0)=1, u1'(0)=0 and u2(0)=0, u2'(0)=1.
struct Monodromy {
    double u1, du1, u2, du2;
};

inline Monodromy monodromy(const std::function<double(double)>& V, double L,
                           double lambda, int steps = 200000) {
    const double h = L / steps;
    double y[4] = {1.0, 0.0, 0.0, 1.0}; // u1, du1, u2, du2
    auto rhs = [&](double s, const double* y, double* f) {
        const double w = V(s) - lambda;
        f[0] = y[1];
        f[1] = w * y[0];
        f[2] = y[3];
        f[3] = w * y[2];
    };
    double k1[4], k2[4], k3[4], k4[4], tmp[4];
    for (int i = 0; i < steps; ++i) {
        const double s = i * h;
        rhs(s, y, k1);
        for (int j = 0; j < 4; ++j) tmp[j] = y[j] + 0.5 * h * k1[j];
        rhs(s + 0.5 * h, tmp, k2);
        for (int j = 0; j < 4; ++j) tmp[j] = y[j] + 0.5 * h * k2[j];
        rhs(s + 0.5 * h, tmp, k3);
        for (int j = 0; j < 4; ++j) tmp[j] = y[j] + h * k3[j];
        rhs(s + h, tmp, k4);
        for (int j = 0; j < 4; ++j)
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
    return {y[0], y[1], y[2], y[3]};
}

// Floquet discriminant D(lambda) = u1(L) + u2'(L); periodic eigenvalues solve
// D = 2, antiperiodic ones D = -2.
inline double discriminant(const std::function<double(double)>& V, double L,
                           double lambda, int steps = 200000) {
    const Monodromy m = monodromy(V, L, lambda, steps);
    return m.u1 + m.du2;
}

// Finds a root of f on [a, b] (sign change required) by bisection.
inline double bisect(const std::function<double(double)>& f, double a, double b,
                     double tol = 1e-12) {
    double fa = f(a), fb = f(b);
    if (fa * fb > 0.0) throw std::runtime_error("bisect: no sign change");
    for (int i = 0; i < 200 && b - a > tol; ++i) {
        const double c = 0.5 * (a + b);
        const double fc = f(c);
        if (fa * fc <= 0.0) {
            b = c;
            fb = fc;
        } else {
            a = c;
            fa = fc;
        }
    }
    return 0.5 * (a + b);
}

// --- Ellipse perimeter by adaptive Simpson on |gamma'(t)| -------------------
inline double ellipse_perimeter(double a, double b) {
    auto speed = [&](double t) {
        const double sa = a * std::sin(t), cb = b * std::cos(t);
        return std::sqrt(sa * sa + cb * cb);
    };
    std::function<double(double, double, double, double, double, double)> simp =
        [&](double lo, double hi, double flo, double fmid, double fhi, double tol) {
            const double mid = 0.5 * (lo + hi);
            const double lm = 0.5 * (lo + mid), mh = 0.5 * (mid + hi);
            const double flm = speed(lm), fmh = speed(mh);
            const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
            const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
            const double right = (hi - mid) / 6.0 * (fmid + 4.0 * fmh + fhi);
            if (std::abs(left + right - whole) < 15.0 * tol)
                return left + right + (left + right - whole) / 15.0;
            return simp(lo, mid, flo, flm, fmid, 0.5 * tol) +
                   simp(mid, hi, fmid, fmh, fhi, 0.5 * tol);
        };
    const double pi = 3.14159265358979323846;
    return simp(0.0, 2.0 * pi, speed(0.0), speed(pi), speed(2.0 * pi), 1e-12);
}

// Poschl-Teller ground state of -u'' - lam(lam+1) sech^2(s) u with
// lam(lam+1) = 1: mu1 = -lam^2, lam = (sqrt(5)-1)/2.
inline double poschl_teller_mu1() {
    const double lam = 0.5 * (std::sqrt(5.0) - 1.0);
    return -lam * lam;
}

// Ordinary least squares slope/intercept of y against x.
inline void linear_fit(const std::vector<double>& x, const std::vector<double>& y,
                       double& slope, double& intercept) {
    const int n = static_cast<int>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    intercept = (sy - slope * sx) / n;
}

} // namespace oracle
