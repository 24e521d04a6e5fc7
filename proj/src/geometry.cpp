#include "leakywire/geometry.hpp"
#include "leakywire/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace leakywire {

namespace {

// ---------------------------------------------------------------- linear algebra

// Thomas algorithm; diagonally dominant systems only. Overwrites rhs with x.
void tridiag_solve(std::vector<double>& sub, std::vector<double>& diag,
                   std::vector<double>& sup, std::vector<double>& rhs) {
    const int n = static_cast<int>(diag.size());
    for (int i = 1; i < n; ++i) {
        const double w = sub[i] / diag[i - 1];
        diag[i] -= w * sup[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (int i = n - 2; i >= 0; --i)
        rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

// Cyclic tridiagonal via Sherman-Morrison on top of Thomas.
std::vector<double> cyclic_tridiag_solve(const std::vector<double>& sub,
                                         const std::vector<double>& diag,
                                         const std::vector<double>& sup,
                                         const std::vector<double>& rhs) {
    const int n = static_cast<int>(diag.size());
    const double corner_top = sub[0];     // A(0, n-1)
    const double corner_bot = sup[n - 1]; // A(n-1, 0)
    const double gamma = -diag[0];

    std::vector<double> d(diag);
    d[0] -= gamma;
    d[n - 1] -= corner_top * corner_bot / gamma;

    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = corner_bot;

    std::vector<double> a(sub), b(d), c(sup), y(rhs);
    tridiag_solve(a, b, c, y);
    a = sub; b = d; c = sup;
    std::vector<double> q(u);
    tridiag_solve(a, b, c, q);

    const double vy = y[0] + corner_top / gamma * y[n - 1];
    const double vq = q[0] + corner_top / gamma * q[n - 1];
    const double f = vy / (1.0 + vq);
    for (int i = 0; i < n; ++i) y[i] -= f * q[i];
    return y;
}

// 5-point Gauss-Legendre on [a, b].
template <class F>
double gauss5(const F& f, double a, double b) {
    static const double x[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                0.5384693101056831, 0.9061798459386640};
    static const double w[5] = {0.2369268850561891, 0.4786286704993665,
                                0.5688888888888889, 0.4786286704993665,
                                0.2369268850561891};
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 5; ++i) s += w[i] * f(c + h * x[i]);
    return s * h;
}

} // namespace

// ------------------------------------------------------------------ CubicSpline

CubicSpline::CubicSpline(std::vector<double> t, std::vector<double> y, Kind kind,
                         double period)
    : t_(std::move(t)), y_(std::move(y)), kind_(kind), period_(period) {
    const int n = static_cast<int>(t_.size());
    if (n < 4 || y_.size() != t_.size())
        throw GeometryError("cubic spline: need at least 4 knots");
    for (int i = 1; i < n; ++i)
        if (!(t_[i] > t_[i - 1]))
            throw GeometryError("cubic spline: knots must be strictly increasing");

    if (kind_ == Kind::periodic) {
        if (!(period_ > t_[n - 1] - t_[0]))
            throw GeometryError("cubic spline: period must exceed the knot span");
        h_.resize(n);
        for (int i = 0; i + 1 < n; ++i) h_[i] = t_[i + 1] - t_[i];
        h_[n - 1] = period_ - (t_[n - 1] - t_[0]);

        std::vector<double> d(n);
        for (int i = 0; i < n; ++i) d[i] = (y_[(i + 1) % n] - y_[i]) / h_[i];
        std::vector<double> sub(n), diag(n), sup(n), rhs(n);
        for (int i = 0; i < n; ++i) {
            const int im = (i + n - 1) % n;
            sub[i] = h_[im];
            diag[i] = 2.0 * (h_[im] + h_[i]);
            sup[i] = h_[i];
            rhs[i] = 6.0 * (d[i] - d[im]);
        }
        m_ = cyclic_tridiag_solve(sub, diag, sup, rhs);
    } else {
        h_.resize(n - 1);
        for (int i = 0; i + 1 < n; ++i) h_[i] = t_[i + 1] - t_[i];
        std::vector<double> d(n - 1);
        for (int i = 0; i + 1 < n; ++i) d[i] = (y_[i + 1] - y_[i]) / h_[i];

        // not-a-knot end conditions, eliminated into the first/last interior rows
        const int k = n - 2; // unknowns m_1 .. m_{n-2}
        std::vector<double> sub(k), diag(k), sup(k), rhs(k);
        for (int i = 1; i <= n - 2; ++i) {
            sub[i - 1] = h_[i - 1];
            diag[i - 1] = 2.0 * (h_[i - 1] + h_[i]);
            sup[i - 1] = h_[i];
            rhs[i - 1] = 6.0 * (d[i] - d[i - 1]);
        }
        // m_0 = (1 + h0/h1) m_1 - (h0/h1) m_2
        const double r0 = h_[0] / h_[1];
        diag[0] += h_[0] * (1.0 + r0);
        sup[0] -= h_[0] * r0;
        sub[0] = 0.0;
        // m_{n-1} = (1 + h_{n-2}/h_{n-3}) m_{n-2} - (h_{n-2}/h_{n-3}) m_{n-3}
        const double r1 = h_[n - 2] / h_[n - 3];
        diag[k - 1] += h_[n - 2] * (1.0 + r1);
        sub[k - 1] -= h_[n - 2] * r1;
        sup[k - 1] = 0.0;

        tridiag_solve(sub, diag, sup, rhs);
        m_.assign(n, 0.0);
        for (int i = 1; i <= n - 2; ++i) m_[i] = rhs[i - 1];
        m_[0] = (1.0 + r0) * m_[1] - r0 * m_[2];
        m_[n - 1] = (1.0 + r1) * m_[n - 2] - r1 * m_[n - 3];
    }
}

int CubicSpline::locate(double& x) const {
    const int n = static_cast<int>(t_.size());
    if (kind_ == Kind::periodic) {
        x = t_[0] + std::fmod(x - t_[0], period_);
        if (x < t_[0]) x += period_;
        auto it = std::upper_bound(t_.begin(), t_.end(), x);
        int i = static_cast<int>(it - t_.begin()) - 1;
        if (i < 0) i = 0;
        return i; // i == n-1 selects the wrap segment
    }
    if (x < t_[0]) x = t_[0];
    if (x > t_[n - 1]) x = t_[n - 1];
    auto it = std::upper_bound(t_.begin(), t_.end(), x);
    int i = static_cast<int>(it - t_.begin()) - 1;
    if (i < 0) i = 0;
    if (i > n - 2) i = n - 2;
    return i;
}

double CubicSpline::value(double x) const {
    const int n = static_cast<int>(t_.size());
    const int i = locate(x);
    const int j = (kind_ == Kind::periodic) ? (i + 1) % n : i + 1;
    const double h = h_[i], u = x - t_[i];
    return (m_[i] * (h - u) * (h - u) * (h - u) + m_[j] * u * u * u) / (6.0 * h) +
           (y_[i] / h - m_[i] * h / 6.0) * (h - u) +
           (y_[j] / h - m_[j] * h / 6.0) * u;
}

double CubicSpline::deriv(double x) const {
    const int n = static_cast<int>(t_.size());
    const int i = locate(x);
    const int j = (kind_ == Kind::periodic) ? (i + 1) % n : i + 1;
    const double h = h_[i], u = x - t_[i];
    return (-m_[i] * (h - u) * (h - u) + m_[j] * u * u) / (2.0 * h) +
           (y_[j] - y_[i]) / h - (m_[j] - m_[i]) * h / 6.0;
}

double CubicSpline::deriv2(double x) const {
    const int n = static_cast<int>(t_.size());
    const int i = locate(x);
    const int j = (kind_ == Kind::periodic) ? (i + 1) % n : i + 1;
    const double h = h_[i], u = x - t_[i];
    return (m_[i] * (h - u) + m_[j] * u) / h;
}

double CubicSpline::deriv3(double x) const {
    const int n = static_cast<int>(t_.size());
    const int i = locate(x);
    const int j = (kind_ == Kind::periodic) ? (i + 1) % n : i + 1;
    return (m_[j] - m_[i]) / h_[i];
}

// --------------------------------------------------------------- ArcLengthCurve

void ArcLengthCurve::finalize() {
    const int n = static_cast<int>(knots.size());
    if (n < 4 || positions.size() != knots.size())
        throw GeometryError("curve: need at least 4 knots with matching positions");
    if (!(L > 0.0)) throw GeometryError("curve: nonpositive length");

    drift_ = (mode == CurveMode::periodic) ? period_vector : Eigen::Vector3d::Zero();

    std::vector<double> x(n), y(n), z(n);
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector3d p = positions[i] - (knots[i] / L) * drift_;
        x[i] = p.x();
        y[i] = p.y();
        z[i] = p.z();
    }
    const auto kind = cyclic() ? CubicSpline::Kind::periodic : CubicSpline::Kind::not_a_knot;
    const double period = cyclic() ? L : 0.0;
    sx_ = CubicSpline(knots, x, kind, period);
    sy_ = CubicSpline(knots, y, kind, period);
    sz_ = CubicSpline(knots, z, kind, period);
    finalized_ = true;

    const int lo = cyclic() ? 0 : 1;
    const int hi = cyclic() ? n - 1 : n - 2;
    for (int i = lo; i <= hi; ++i) {
        const double sp = derivative(knots[i]).norm();
        if (std::abs(sp - 1.0) > 1e-8) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.3e", std::abs(sp - 1.0));
            throw GeometryError("curve: unit-speed invariant violated at knot " +
                                std::to_string(i) + " (|speed - 1| = " + buf + ")");
        }
    }
}

Eigen::Vector3d ArcLengthCurve::position(double s) const {
    if (!finalized_) throw GeometryError("curve: finalize() not called");
    return Eigen::Vector3d(sx_.value(s), sy_.value(s), sz_.value(s)) + (s / L) * drift_;
}

Eigen::Vector3d ArcLengthCurve::derivative(double s) const {
    if (!finalized_) throw GeometryError("curve: finalize() not called");
    return Eigen::Vector3d(sx_.deriv(s), sy_.deriv(s), sz_.deriv(s)) + drift_ / L;
}

Eigen::Vector3d ArcLengthCurve::second_derivative(double s) const {
    if (!finalized_) throw GeometryError("curve: finalize() not called");
    return {sx_.deriv2(s), sy_.deriv2(s), sz_.deriv2(s)};
}

Eigen::Vector3d ArcLengthCurve::third_derivative(double s) const {
    if (!finalized_) throw GeometryError("curve: finalize() not called");
    return {sx_.deriv3(s), sy_.deriv3(s), sz_.deriv3(s)};
}

// ------------------------------------------------------------- reparametrization

ArcLengthCurve reparametrize_arclength(const CurveSamples& raw) {
    const int n = static_cast<int>(raw.points.size());
    if (n < 8) throw GeometryError("curve samples: need at least 8 points");
    if (raw.closed && raw.has_period)
        throw GeometryError("curve samples: closed and periodic are mutually exclusive");

    Eigen::Vector3d bb_lo = raw.points[0], bb_hi = raw.points[0];
    for (const auto& p : raw.points) {
        bb_lo = bb_lo.cwiseMin(p);
        bb_hi = bb_hi.cwiseMax(p);
    }
    double scale = (bb_hi - bb_lo).norm();
    if (raw.has_period) scale = std::max(scale, raw.period_vector.norm());
    if (!(scale > 0.0)) throw GeometryError("curve samples: all points coincide");

    for (int i = 1; i < n; ++i)
        if ((raw.points[i] - raw.points[i - 1]).norm() < 1e-12 * scale)
            throw GeometryError("curve samples: repeated consecutive points");
    if (!raw.closed && !raw.has_period &&
        (raw.points[n - 1] - raw.points[0]).norm() < 1e-9 * scale)
        throw GeometryError("curve samples: endpoints coincide but closed flag not set");

    const bool cyc = raw.closed || raw.has_period;
    const Eigen::Vector3d drift =
        raw.has_period ? raw.period_vector : Eigen::Vector3d::Zero();

    // chord-length parameter
    std::vector<double> t(n);
    t[0] = 0.0;
    for (int i = 1; i < n; ++i)
        t[i] = t[i - 1] + (raw.points[i] - raw.points[i - 1]).norm();
    double T = t[n - 1];
    if (cyc) T += (raw.points[0] + drift - raw.points[n - 1]).norm();

    std::vector<double> qx(n), qy(n), qz(n);
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector3d q = raw.points[i] - (t[i] / T) * drift;
        qx[i] = q.x();
        qy[i] = q.y();
        qz[i] = q.z();
    }
    const auto kind = cyc ? CubicSpline::Kind::periodic : CubicSpline::Kind::not_a_knot;
    const double period = cyc ? T : 0.0;
    CubicSpline SX(t, qx, kind, period), SY(t, qy, kind, period), SZ(t, qz, kind, period);

    auto speed = [&](double u) {
        Eigen::Vector3d v(SX.deriv(u), SY.deriv(u), SZ.deriv(u));
        v += drift / T;
        return v.norm();
    };
    auto point = [&](double u) -> Eigen::Vector3d {
        return Eigen::Vector3d(SX.value(u), SY.value(u), SZ.value(u)) +
               (u / T) * drift;
    };

    // cumulative arc length at segment boundaries
    const int nseg = cyc ? n : n - 1;
    std::vector<double> seg_end(n + 1);
    seg_end[0] = 0.0;
    for (int i = 0; i < nseg; ++i) {
        const double a = t[i];
        const double b = (i + 1 < n) ? t[i + 1] : T;
        seg_end[i + 1] = seg_end[i] + gauss5(speed, a, b);
    }
    const double L = seg_end[nseg];

    const int m = std::clamp(2 * n, 1024, 8192);
    const int nk = cyc ? m : m + 1;
    std::vector<double> knots(nk);
    std::vector<Eigen::Vector3d> pos(nk);
    int seg = 0;
    for (int j = 0; j < nk; ++j) {
        const double s = L * j / m;
        knots[j] = s;
        while (seg + 1 < nseg && seg_end[seg + 1] < s) ++seg;
        double a = t[seg];
        double b = (seg + 1 < n) ? t[seg + 1] : T;
        double u = a + (b - a) *
            std::clamp((s - seg_end[seg]) /
                           std::max(seg_end[seg + 1] - seg_end[seg], 1e-300),
                       0.0, 1.0);
        // Newton with bisection safeguard on sigma(u) = s within the segment
        double lo = a, hi = b;
        for (int it = 0; it < 60; ++it) {
            const double f = seg_end[seg] + gauss5(speed, a, u) - s;
            if (std::abs(f) < 1e-13 * std::max(L, 1.0)) break;
            if (f > 0.0) hi = u; else lo = u;
            const double sp = speed(u);
            double un = u - f / sp;
            if (!(un > lo && un < hi)) un = 0.5 * (lo + hi);
            u = un;
        }
        pos[j] = point(u);
    }

    ArcLengthCurve out;
    out.knots = std::move(knots);
    out.positions = std::move(pos);
    out.L = L;
    out.mode = raw.closed ? CurveMode::loop
                          : (raw.has_period ? CurveMode::periodic : CurveMode::open);
    out.period_vector = drift;
    out.finalize();
    return out;
}

// ---------------------------------------------------------------- curve catalog

namespace {

double take_param(std::map<std::string, double>& p, const std::string& key,
                  double fallback) {
    auto it = p.find(key);
    if (it == p.end()) return fallback;
    const double v = it->second;
    p.erase(it);
    return v;
}

void reject_leftovers(const std::map<std::string, double>& p, const std::string& family) {
    if (!p.empty())
        throw ConfigError("builtin_curve: unknown parameter '" + p.begin()->first +
                          "' for family '" + family + "'");
}

} // namespace

ArcLengthCurve builtin_curve(const std::string& name,
                             const std::map<std::string, double>& params) {
    std::map<std::string, double> p(params);
    using std::numbers::pi;

    if (name == "circle") {
        const double r = take_param(p, "radius", 1.0);
        const int nk = static_cast<int>(take_param(p, "knots", 2048));
        reject_leftovers(p, name);
        if (!(r > 0.0)) throw ConfigError("circle: radius must be positive");
        if (nk < 16) throw ConfigError("circle: too few knots");
        ArcLengthCurve c;
        c.mode = CurveMode::loop;
        c.L = 2.0 * pi * r;
        c.knots.resize(nk);
        c.positions.resize(nk);
        for (int j = 0; j < nk; ++j) {
            const double s = c.L * j / nk;
            c.knots[j] = s;
            c.positions[j] = {r * std::cos(s / r), r * std::sin(s / r), 0.0};
        }
        c.finalize();
        return c;
    }

    if (name == "helix") {
        const double a = take_param(p, "radius", 1.0);
        const double b = take_param(p, "pitch", 1.0);
        const int nk = static_cast<int>(take_param(p, "knots", 2048));
        reject_leftovers(p, name);
        if (!(a > 0.0) || !(b > 0.0))
            throw ConfigError("helix: radius and pitch must be positive");
        if (nk < 16) throw ConfigError("helix: too few knots");
        const double w = 1.0 / std::sqrt(a * a + b * b); // unit-speed frequency
        ArcLengthCurve c;
        c.mode = CurveMode::periodic;
        c.L = 2.0 * pi / w;
        c.period_vector = {0.0, 0.0, 2.0 * pi * b};
        c.knots.resize(nk);
        c.positions.resize(nk);
        for (int j = 0; j < nk; ++j) {
            const double s = c.L * j / nk;
            c.knots[j] = s;
            c.positions[j] = {a * std::cos(w * s), a * std::sin(w * s), b * w * s};
        }
        c.finalize();
        return c;
    }

    if (name == "bent-line") {
        // planar curve with kappa(s) = 1/(1+s^2): tangent angle arctan(s)
        const double R = take_param(p, "truncation", 30.0);
        int nk = static_cast<int>(take_param(p, "knots", 4097));
        reject_leftovers(p, name);
        if (!(R > 1.0)) throw ConfigError("bent-line: truncation must exceed 1");
        if (nk < 17) throw ConfigError("bent-line: too few knots");
        if (nk % 2 == 0) ++nk; // keep a knot exactly at s = 0
        ArcLengthCurve c;
        c.mode = CurveMode::infinite_truncated;
        c.L = 2.0 * R;
        c.truncation_radius = R;
        c.s_offset = -R;
        c.knots.resize(nk);
        c.positions.resize(nk);
        for (int j = 0; j < nk; ++j) {
            const double s = -R + c.L * j / (nk - 1);
            c.knots[j] = s + R;
            c.positions[j] = {std::asinh(s), std::hypot(1.0, s) - 1.0, 0.0};
        }
        c.finalize();
        return c;
    }

    if (name == "planar-ellipse") {
        const double a = take_param(p, "a", 2.0);
        const double b = take_param(p, "b", 1.0);
        const int ns = static_cast<int>(take_param(p, "samples", 4096));
        reject_leftovers(p, name);
        if (!(a > 0.0) || !(b > 0.0))
            throw ConfigError("planar-ellipse: semi-axes must be positive");
        if (ns < 16) throw ConfigError("planar-ellipse: too few samples");
        CurveSamples s;
        s.closed = true;
        s.points.resize(ns);
        for (int j = 0; j < ns; ++j) {
            const double t = 2.0 * pi * j / ns;
            s.points[j] = {a * std::cos(t), b * std::sin(t), 0.0};
        }
        return reparametrize_arclength(s);
    }

    if (name == "sine-perturbed-line") {
        const double eps = take_param(p, "amplitude", 0.1);
        const double P = take_param(p, "period", 2.0 * pi);
        const int ns = static_cast<int>(take_param(p, "samples", 2048));
        reject_leftovers(p, name);
        if (!(eps >= 0.0)) throw ConfigError("sine-perturbed-line: negative amplitude");
        if (!(P > 0.0)) throw ConfigError("sine-perturbed-line: period must be positive");
        if (ns < 16) throw ConfigError("sine-perturbed-line: too few samples");
        CurveSamples s;
        s.has_period = true;
        s.period_vector = {P, 0.0, 0.0};
        s.points.resize(ns);
        for (int j = 0; j < ns; ++j) {
            const double t = P * j / ns;
            s.points[j] = {t, eps * std::sin(2.0 * pi * t / P), 0.0};
        }
        return reparametrize_arclength(s);
    }

    throw ConfigError("builtin_curve: unknown family '" + name + "'");
}

// ------------------------------------------------------------ curvature profile

namespace {

std::vector<double> kappa_on_grid(const ArcLengthCurve& curve, int n,
                                  std::vector<double>* grid_out) {
    const bool cyc =
        curve.mode == CurveMode::loop || curve.mode == CurveMode::periodic;
    std::vector<double> k(n);
    if (grid_out) grid_out->resize(n);
    for (int i = 0; i < n; ++i) {
        const double s = cyc ? curve.L * i / n : curve.L * i / (n - 1);
        if (grid_out) (*grid_out)[i] = s;
        k[i] = curve.second_derivative(s).norm();
    }
    return k;
}

} // namespace

CurvatureProfile curvature_profile(const ArcLengthCurve& curve, int grid_size) {
    if (grid_size < 16) throw ConfigError("curvature_profile: grid_size must be >= 16");
    const bool cyc =
        curve.mode == CurveMode::loop || curve.mode == CurveMode::periodic;

    std::vector<double> grid;
    std::vector<double> k = kappa_on_grid(curve, grid_size, &grid);
    const double sup = *std::max_element(k.begin(), k.end());

    // resolution check: midpoints of the grid must agree with linear
    // interpolation of the stored profile to within 5% of the supremum
    const int nmid = cyc ? grid_size : grid_size - 1;
    for (int i = 0; i < nmid; ++i) {
        const double s_mid = cyc ? curve.L * (i + 0.5) / grid_size
                                 : curve.L * (i + 0.5) / (grid_size - 1);
        const double k_mid = curve.second_derivative(s_mid).norm();
        const double k_lin = 0.5 * (k[i] + k[(i + 1) % grid_size]);
        if (std::abs(k_mid - k_lin) > 0.05 * std::max(sup, 1e-300))
            throw GeometryError(
                "curvature_profile: grid too coarse for the curvature variation");
    }

    CurvatureProfile out;
    out.grid.resize(grid_size);
    for (int i = 0; i < grid_size; ++i) out.grid[i] = grid[i] + curve.s_offset;
    out.kappa = std::move(k);
    out.kappa_sup = sup;
    out.source = ProfileSource::from_curve;
    out.mode = curve.mode;
    out.L = curve.L;

    // torsion, informational only: filled when the osculating plane is
    // resolvable everywhere on the grid
    std::vector<double> tau(grid_size);
    bool ok = true;
    for (int i = 0; i < grid_size && ok; ++i) {
        const double s = grid[i];
        const Eigen::Vector3d d1 = curve.derivative(s);
        const Eigen::Vector3d d2 = curve.second_derivative(s);
        const Eigen::Vector3d d3 = curve.third_derivative(s);
        const Eigen::Vector3d c = d1.cross(d2);
        const double c2 = c.squaredNorm();
        if (c2 < 1e-12 * (1.0 + sup * sup))
            ok = false;
        else
            tau[i] = c.dot(d3) / c2;
    }
    if (ok) out.torsion = std::move(tau);
    return out;
}

// --------------------------------------------------------------- tube embedding

EmbeddingReport check_tube_embedding(const ArcLengthCurve& curve, double d) {
    if (!(d > 0.0)) throw GeometryError("check_tube_embedding: d must be positive");
    const bool cyc =
        curve.mode == CurveMode::loop || curve.mode == CurveMode::periodic;
    const int n = static_cast<int>(curve.knots.size());

    double sup = 0.0;
    for (int i = 0; i < n; ++i)
        sup = std::max(sup, curve.second_derivative(curve.knots[i]).norm());

    EmbeddingReport rep;
    rep.d = d;
    rep.kappa_sup = sup;
    rep.local_diffeo_ok = d * sup < 1.0;

    const int stride = std::max(1, n / 2048);
    std::vector<double> s;
    std::vector<Eigen::Vector3d> pts;
    for (int i = 0; i < n; i += stride) {
        s.push_back(curve.knots[i]);
        pts.push_back(curve.positions[i]);
    }
    const int m = static_cast<int>(pts.size());
    const double guard = 4.0 * d;

    double clearance = std::numeric_limits<double>::infinity();
    double chord = 1.0;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            double sep = s[j] - s[i];
            if (cyc) sep = std::min(sep, curve.L - sep);
            if (sep <= 0.0) continue;
            const double dist = (pts[j] - pts[i]).norm();
            chord = std::min(chord, dist / sep);
            if (sep > guard) clearance = std::min(clearance, dist);
        }
        if (curve.mode == CurveMode::periodic) {
            // against the next period's translate
            for (int j = 0; j < m; ++j) {
                const double sep = s[j] + curve.L - s[i];
                const double dist = (pts[j] + curve.period_vector - pts[i]).norm();
                chord = std::min(chord, dist / sep);
                if (sep > guard) clearance = std::min(clearance, dist);
            }
        }
    }
    rep.min_tube_clearance = clearance;
    rep.self_intersection_free = !(clearance <= 2.0 * d);
    rep.chord_constant = std::max(chord, 0.0);
    return rep;
}

double fitted_decay_exponent(const CurvatureProfile& profile) {
    double smax = 0.0;
    for (double s : profile.grid) smax = std::max(smax, std::abs(s));
    if (!(smax > 0.0))
        throw GeometryError("fitted_decay_exponent: degenerate grid");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t i = 0; i < profile.grid.size(); ++i) {
        const double a = std::abs(profile.grid[i]);
        if (a < smax / 3.0 || !(profile.kappa[i] > 0.0)) continue;
        const double x = std::log(a), y = std::log(profile.kappa[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++n;
    }
    if (n < 8)
        throw GeometryError("fitted_decay_exponent: too few usable grid points");
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return -slope;
}

// -------------------------------------------------------------------- CSV input

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        const auto a = cell.find_first_not_of(" \t\r");
        if (a == std::string::npos) {
            out.emplace_back();
            continue;
        }
        const auto b = cell.find_last_not_of(" \t\r");
        out.push_back(cell.substr(a, b - a + 1));
    }
    return out;
}

double parse_cell(const std::string& cell, const std::string& path, int line_no) {
    try {
        size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw IoError(path + ": malformed number on line " + std::to_string(line_no));
    }
}

} // namespace

CurveSamples load_curve_samples(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open curve samples file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw IoError(path + ": empty file");
    const auto header = split_csv_line(line);
    if (header.size() != 4 || header[1] != "x" || header[2] != "y" || header[3] != "z")
        throw IoError(path + ": expected header s_or_index,x,y,z");

    CurveSamples out;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 4)
            throw IoError(path + ": expected 4 columns on line " + std::to_string(line_no));
        out.points.emplace_back(parse_cell(cells[1], path, line_no),
                                parse_cell(cells[2], path, line_no),
                                parse_cell(cells[3], path, line_no));
    }
    return out;
}

CurvatureProfile load_curvature_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open curvature profile file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw IoError(path + ": empty file");
    const auto header = split_csv_line(line);
    if (header.size() != 2 || header[0] != "s" || header[1] != "kappa")
        throw IoError(path + ": expected header s,kappa");

    CurvatureProfile out;
    out.source = ProfileSource::analytic;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 2)
            throw IoError(path + ": expected 2 columns on line " + std::to_string(line_no));
        const double s = parse_cell(cells[0], path, line_no);
        const double k = parse_cell(cells[1], path, line_no);
        if (!out.grid.empty() && !(s > out.grid.back()))
            throw GeometryError(path + ": s values must be strictly increasing");
        if (!(k >= 0.0) || !std::isfinite(k))
            throw GeometryError(path + ": kappa must be nonnegative and finite");
        out.grid.push_back(s);
        out.kappa.push_back(k);
    }
    if (out.grid.size() < 2) throw IoError(path + ": need at least two rows");
    out.kappa_sup = *std::max_element(out.kappa.begin(), out.kappa.end());
    out.L = out.grid.back() - out.grid.front();
    return out;
}

} // namespace leakywire
