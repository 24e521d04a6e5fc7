#include "leakywire/comparison.hpp"
#include "leakywire/errors.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

namespace leakywire {

namespace {

using Complex = std::complex<double>;

// ------------------------------------------------------- potential resampling

// Cubic interpolant over a curvature profile; periodic for cyclic profiles.
class ProfileInterpolant {
public:
    explicit ProfileInterpolant(const CurvatureProfile& p) {
        if (p.grid.size() < 4)
            throw ConfigError("curvature profile too small to resample (need >= 4 points)");
        cyclic_ = p.mode == CurveMode::loop || p.mode == CurveMode::periodic;
        const auto kind =
            cyclic_ ? CubicSpline::Kind::periodic : CubicSpline::Kind::not_a_knot;
        spline_ = CubicSpline(p.grid, p.kappa, kind, cyclic_ ? p.L : 0.0);
    }

    double kappa(double s) const { return std::max(spline_.value(s), 0.0); }

private:
    CubicSpline spline_;
    bool cyclic_ = false;
};

// ----------------------------------------------------------- matrix assembly

struct Assembled {
    int n = 0;
    double ds = 0.0;
    std::vector<double> diag; // kinetic diagonal + potential
    double off = 0.0;         // -1/ds^2
    Complex corner{0.0, 0.0}; // A(0, n-1); A(n-1, 0) is its conjugate
    double vmin = 0.0;        // min of the potential alone
};

Assembled assemble(const DiscreteOperator& op) {
    Assembled a;
    a.n = op.n;
    a.ds = op.delta_s;
    const double k2 = 1.0 / (op.delta_s * op.delta_s);
    a.off = -k2;
    a.diag.resize(op.n);
    a.vmin = *std::min_element(op.potential.begin(), op.potential.end());
    for (int i = 0; i < op.n; ++i) a.diag[i] = 2.0 * k2 + op.potential[i];
    switch (op.bc) {
    case BoundaryCondition::periodic:
        a.corner = Complex(-k2, 0.0);
        break;
    case BoundaryCondition::floquet:
        a.corner = -k2 * std::conj(op.phase);
        break;
    case BoundaryCondition::neumann:
        a.diag[0] -= k2; // mirror ghost at each end
        a.diag[op.n - 1] -= k2;
        break;
    case BoundaryCondition::dirichlet:
    case BoundaryCondition::whole_line_truncated:
        break;
    }
    return a;
}

// apply y = A x
template <typename Scalar>
void apply(const Assembled& a, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x,
           Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& y) {
    const int n = a.n;
    y.resize(n);
    for (int i = 0; i < n; ++i) {
        Scalar v = a.diag[i] * x[i];
        if (i > 0) v += Scalar(a.off) * x[i - 1];
        if (i + 1 < n) v += Scalar(a.off) * x[i + 1];
        y[i] = v;
    }
    if (a.corner != Complex(0.0, 0.0)) {
        if constexpr (std::is_same_v<Scalar, double>) {
            y[0] += a.corner.real() * x[n - 1];
            y[n - 1] += a.corner.real() * x[0];
        } else {
            y[0] += a.corner * x[n - 1];
            y[n - 1] += std::conj(a.corner) * x[0];
        }
    }
}

// LDL-style Thomas factorization of the tridiagonal part of A - sigma, which
// is strictly diagonally dominant by the choice sigma = vmin - 1.
struct TridiagFactor {
    std::vector<double> d; // modified diagonal
    std::vector<double> l; // multipliers
    double e = 0.0;        // constant off-diagonal

    TridiagFactor(const Assembled& a, double sigma) : e(a.off) {
        const int n = a.n;
        d.resize(n);
        l.assign(n, 0.0);
        d[0] = a.diag[0] - sigma;
        for (int i = 1; i < n; ++i) {
            l[i] = e / d[i - 1];
            d[i] = a.diag[i] - sigma - l[i] * e;
        }
    }

    template <typename Scalar>
    void solve(Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x) const {
        const int n = static_cast<int>(d.size());
        for (int i = 1; i < n; ++i) x[i] -= Scalar(l[i]) * x[i - 1];
        x[n - 1] /= Scalar(d[n - 1]);
        for (int i = n - 2; i >= 0; --i) x[i] = (x[i] - Scalar(e) * x[i + 1]) / Scalar(d[i]);
    }
};

// Shift-invert application for A - sigma = T + corners, with the cyclic
// corners handled as a rank-2 Woodbury correction on top of the Thomas solve.
template <typename Scalar>
class ShiftInvert {
public:
    ShiftInvert(const Assembled& a, double sigma) : a_(a), fac_(a, sigma) {
        if (a_.corner != Complex(0.0, 0.0)) {
            const int n = a_.n;
            t0_.setZero(n);
            t0_[0] = 1.0;
            fac_.solve(t0_);
            t1_.setZero(n);
            t1_[n - 1] = 1.0;
            fac_.solve(t1_);
            // S = B^{-1} + U^T T^{-1} U with B = [[0, c], [conj(c), 0]]
            const Complex c = a_.corner;
            const Complex s00 = t0_[0];
            const Complex s01 = Complex(1.0) / std::conj(c) + Complex(t1_[0]);
            const Complex s10 = Complex(1.0) / c + Complex(t0_[n - 1]);
            const Complex s11 = t1_[n - 1];
            const Complex det = s00 * s11 - s01 * s10;
            si00_ = s11 / det;
            si01_ = -s01 / det;
            si10_ = -s10 / det;
            si11_ = s00 / det;
        }
    }

    void solve(Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x) const {
        fac_.solve(x);
        if (a_.corner == Complex(0.0, 0.0)) return;
        const int n = a_.n;
        const Scalar w0 = x[0], w1 = x[n - 1];
        Scalar z0, z1;
        if constexpr (std::is_same_v<Scalar, double>) {
            z0 = si00_.real() * w0 + si01_.real() * w1;
            z1 = si10_.real() * w0 + si11_.real() * w1;
        } else {
            z0 = si00_ * w0 + si01_ * w1;
            z1 = si10_ * w0 + si11_ * w1;
        }
        for (int i = 0; i < n; ++i) x[i] -= Scalar(t0_[i]) * z0 + Scalar(t1_[i]) * z1;
    }

private:
    const Assembled& a_;
    TridiagFactor fac_;
    Eigen::VectorXd t0_, t1_;
    Complex si00_, si01_, si10_, si11_;
};

// Dense reference path for small systems and as a fallback.
template <typename Scalar>
std::vector<double> lowest_eigs_dense(const Assembled& a, int count) {
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const int n = a.n;
    Mat M = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        M(i, i) = a.diag[i];
        if (i > 0) M(i, i - 1) = a.off;
        if (i + 1 < n) M(i, i + 1) = a.off;
    }
    if (a.corner != Complex(0.0, 0.0)) {
        if constexpr (std::is_same_v<Scalar, double>) {
            M(0, n - 1) = a.corner.real();
            M(n - 1, 0) = a.corner.real();
        } else {
            M(0, n - 1) = a.corner;
            M(n - 1, 0) = std::conj(a.corner);
        }
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(M, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw SolverError("dense eigensolver failed to converge");
    std::vector<double> out(count);
    for (int j = 0; j < count; ++j) out[j] = es.eigenvalues()[j];
    return out;
}

// Shift-invert subspace iteration with Rayleigh-Ritz extraction.
// cluster_mode relaxes the convergence requirement for nonnegative Ritz
// values: truncated whole-line problems carry a dense discretized-continuum
// cluster just above zero whose shift-invert ratios approach 1, while only
// the (well separated) negative eigenvalues are actually reported.
template <typename Scalar>
std::vector<double> lowest_eigs_iterative(const Assembled& a, int count,
                                          bool cluster_mode) {
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    const int n = a.n;
    const int p = std::min(n, count + 8);
    const double sigma = a.vmin - 1.0;
    ShiftInvert<Scalar> inv(a, sigma);

    std::mt19937 rng(0x5eed1234u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat X(n, p);
    for (int j = 0; j < p; ++j)
        for (int i = 0; i < n; ++i) {
            if constexpr (std::is_same_v<Scalar, double>)
                X(i, j) = gauss(rng);
            else
                X(i, j) = Complex(gauss(rng), gauss(rng));
        }

    Eigen::VectorXd ritz_prev = Eigen::VectorXd::Constant(p, 1e300);
    double best_worst = 1e300;
    int since_best = 0;
    Vec col;
    for (int iter = 0; iter < 400; ++iter) {
        for (int j = 0; j < p; ++j) {
            col = X.col(j);
            inv.solve(col);
            X.col(j) = col;
        }
        Eigen::HouseholderQR<Mat> qr(X);
        Mat Q = qr.householderQ() * Mat::Identity(n, p);

        Mat AQ(n, p);
        Vec out;
        for (int j = 0; j < p; ++j) {
            col = Q.col(j);
            apply<Scalar>(a, col, out);
            AQ.col(j) = out;
        }
        Mat H = Q.adjoint() * AQ;
        H = Scalar(0.5) * (H + Mat(H.adjoint()));
        Eigen::SelfAdjointEigenSolver<Mat> es(H);
        if (es.info() != Eigen::Success)
            throw SolverError("projected eigensolver failed");
        X = Q * es.eigenvectors();
        const Eigen::VectorXd ritz = es.eigenvalues();

        double worst = 0.0;
        for (int j = 0; j < count; ++j) {
            const double change =
                std::abs(ritz[j] - ritz_prev[j]) / (1.0 + std::abs(ritz[j]));
            const double tol =
                (cluster_mode && ritz[j] >= -1e-8) ? 1e-7 : 1e-13;
            worst = std::max(worst, change / tol);
        }
        ritz_prev = ritz;
        // degenerate clusters can jitter at the roundoff floor just above the
        // target; once the change stops improving and is already tiny, the
        // values are as converged as the arithmetic allows
        if (worst < 0.5 * best_worst) {
            best_worst = worst;
            since_best = 0;
        } else {
            ++since_best;
        }
        const bool stalled = since_best > 50 && worst < 1e4;
        if (worst < 1.0 || stalled) {
            std::vector<double> outv(count);
            for (int j = 0; j < count; ++j) outv[j] = ritz[j];
            return outv;
        }
    }
    if (n <= 2048) return lowest_eigs_dense<Scalar>(a, count); // slow-path rescue
    throw SolverError("subspace iteration did not converge");
}

std::vector<double> lowest_eigs(const Assembled& a, int count,
                                bool cluster_mode = false) {
    const bool complex_valued = std::abs(a.corner.imag()) > 0.0;
    if (a.n <= 256) {
        return complex_valued ? lowest_eigs_dense<Complex>(a, count)
                              : lowest_eigs_dense<double>(a, count);
    }
    return complex_valued ? lowest_eigs_iterative<Complex>(a, count, cluster_mode)
                          : lowest_eigs_iterative<double>(a, count, cluster_mode);
}

DiscreteOperator build_from_interpolant(const ProfileInterpolant& interp,
                                        const CurvatureProfile& profile,
                                        BoundaryCondition bc, int n,
                                        Complex phase, double L, double s0) {
    DiscreteOperator op;
    op.n = n;
    op.bc = bc;
    op.phase = phase;
    op.L = L;
    op.s0 = s0;
    op.profile = profile;
    op.potential.resize(n);
    const bool vertex = bc == BoundaryCondition::dirichlet ||
                        bc == BoundaryCondition::whole_line_truncated;
    op.delta_s = vertex ? L / (n + 1) : L / n;
    for (int i = 0; i < n; ++i) {
        double s;
        if (vertex)
            s = s0 + (i + 1) * op.delta_s;
        else if (bc == BoundaryCondition::neumann)
            s = s0 + (i + 0.5) * op.delta_s;
        else
            s = s0 + i * op.delta_s;
        const double k = interp.kappa(s);
        op.potential[i] = -0.25 * k * k;
    }
    return op;
}

SpectrumResult spectrum_from(const DiscreteOperator& op, int count,
                             const std::vector<double>& mu,
                             const std::vector<double>& err) {
    SpectrumResult r;
    r.mu = mu;
    r.refine_error = err;
    r.bc = op.bc;
    r.n = op.n;
    r.n_negative = static_cast<int>(std::count_if(
        mu.begin(), mu.end(), [](double m) { return m < 0.0; }));
    (void)count;
    return r;
}

} // namespace

DiscreteOperator build_operator(const CurvatureProfile& profile,
                                BoundaryCondition bc, int n, Complex phase) {
    if (n < 64) throw ConfigError("build_operator: n must be at least 64");
    if (bc == BoundaryCondition::floquet) {
        if (std::abs(std::abs(phase) - 1.0) > 1e-12)
            throw ConfigError("build_operator: floquet phase must have modulus 1");
    } else {
        phase = Complex(1.0, 0.0);
    }
    const ProfileInterpolant interp(profile);
    const double s0 = profile.grid.front();
    return build_from_interpolant(interp, profile, bc, n, phase, profile.L, s0);
}

SpectrumResult eigenvalues_raw(const DiscreteOperator& op, int count) {
    if (count < 1) throw ConfigError("eigenvalues: count must be positive");
    if (count > op.n / 4)
        throw ConfigError("eigenvalues: requested index outside the n/4 trust region");
    const Assembled a = assemble(op);
    const auto mu = lowest_eigs(a, count);
    return spectrum_from(op, count, mu, std::vector<double>(count, 0.0));
}

SpectrumResult eigenvalues(const DiscreteOperator& op, int count) {
    if (count < 1) throw ConfigError("eigenvalues: count must be positive");
    if (count > op.n / 4)
        throw ConfigError("eigenvalues: requested index outside the n/4 trust region");
    if (op.profile.grid.empty())
        throw SolverError("eigenvalues: operator has no profile attached; "
                          "use eigenvalues_raw for hand-assembled operators");
    const ProfileInterpolant interp(op.profile);
    const DiscreteOperator fine = build_from_interpolant(
        interp, op.profile, op.bc, 2 * op.n, op.phase, op.L, op.s0);

    const auto mu_c = lowest_eigs(assemble(op), count);
    const auto mu_f = lowest_eigs(assemble(fine), count);

    std::vector<double> mu(count), err(count);
    for (int j = 0; j < count; ++j) {
        mu[j] = (4.0 * mu_f[j] - mu_c[j]) / 3.0;
        err[j] = std::abs(mu_f[j] - mu_c[j]);
    }
    return spectrum_from(op, count, mu, err);
}

BandTable floquet_spectrum(const CurvatureProfile& profile, double K,
                           int theta_count, int j_max, int n) {
    if (!(K > 0.0)) throw ConfigError("floquet_spectrum: K must be positive");
    if (theta_count < 16)
        throw ConfigError("floquet_spectrum: theta_count must be at least 16");
    if (j_max < 1) throw ConfigError("floquet_spectrum: j_max must be positive");
    using std::numbers::pi;

    BandTable table;
    table.K = K;
    table.thetas.resize(theta_count);
    table.bands.resize(theta_count);
    for (int m = 0; m < theta_count; ++m) {
        const double theta = -pi / K + 2.0 * pi * m / (K * theta_count);
        table.thetas[m] = theta;
        const Complex phase = std::exp(Complex(0.0, theta * K));
        const auto op = build_operator(profile, BoundaryCondition::floquet, n, phase);
        table.bands[m] = eigenvalues(op, j_max).mu;
    }
    return table;
}

SpectrumResult infinite_curve_spectrum(const CurvatureProfile& profile,
                                       int j_max, int n) {
    if (j_max < 1) throw ConfigError("infinite_curve_spectrum: j_max must be positive");
    if (profile.mode == CurveMode::loop || profile.mode == CurveMode::periodic)
        throw ConfigError("infinite_curve_spectrum: profile must cover a truncated line");

    if (profile.kappa_sup > 0.0) {
        const double beta = fitted_decay_exponent(profile);
        if (!(beta > 1.25))
            throw GeometryError("infinite_curve_spectrum: curvature decay exponent " +
                                std::to_string(beta) + " violates the > 5/4 assumption");
    }

    const double s_lo = profile.grid.front(), s_hi = profile.grid.back();
    const double R = std::max(std::abs(s_lo), std::abs(s_hi));
    const ProfileInterpolant interp(profile);

    auto solve_negative = [&](double lo, double hi, int grid_n,
                              std::vector<double>* err_out) {
        // zero-extended potential outside the profile support
        DiscreteOperator op;
        op.n = grid_n;
        op.bc = BoundaryCondition::whole_line_truncated;
        op.L = hi - lo;
        op.s0 = lo;
        op.delta_s = op.L / (grid_n + 1);
        op.potential.resize(grid_n);
        for (int i = 0; i < grid_n; ++i) {
            const double s = lo + (i + 1) * op.delta_s;
            const double k = (s >= s_lo && s <= s_hi) ? interp.kappa(s) : 0.0;
            op.potential[i] = -0.25 * k * k;
        }
        const int count = std::min(j_max + 2, grid_n / 4);
        const auto mu_c = lowest_eigs(assemble(op), count, true);
        DiscreteOperator fine = op;
        fine.n = 2 * grid_n;
        fine.delta_s = op.L / (fine.n + 1);
        fine.potential.resize(fine.n);
        for (int i = 0; i < fine.n; ++i) {
            const double s = lo + (i + 1) * fine.delta_s;
            const double k = (s >= s_lo && s <= s_hi) ? interp.kappa(s) : 0.0;
            fine.potential[i] = -0.25 * k * k;
        }
        const auto mu_f = lowest_eigs(assemble(fine), count, true);
        std::vector<double> neg, err;
        for (int j = 0; j < count; ++j) {
            const double m = (4.0 * mu_f[j] - mu_c[j]) / 3.0;
            if (m < 0.0) {
                neg.push_back(m);
                err.push_back(std::abs(mu_f[j] - mu_c[j]));
            }
        }
        if (err_out) *err_out = err;
        return neg;
    };

    std::vector<double> err;
    const auto neg = solve_negative(s_lo, s_hi, n, &err);
    const auto neg2 = solve_negative(2.0 * s_lo, 2.0 * s_hi, 2 * n, nullptr);

    // R-doubling convergence gate on every reported negative eigenvalue
    if (neg2.size() < neg.size())
        throw RegimeError("infinite_curve_spectrum: negative eigenvalue lost "
                          "under domain doubling");
    for (size_t j = 0; j < neg.size(); ++j)
        if (std::abs(neg[j] - neg2[j]) >= 1e-8)
            throw RegimeError("infinite_curve_spectrum: eigenvalues not converged "
                              "in the truncation radius (doubling changed mu_" +
                              std::to_string(j + 1) + " by more than 1e-8)");

    if (!neg.empty()) {
        const double edge = std::max(interp.kappa(s_lo), interp.kappa(s_hi));
        if (!(0.25 * edge * edge < 1e-3 * std::abs(neg[0])))
            throw RegimeError("infinite_curve_spectrum: truncation radius too small "
                              "(edge potential not negligible against mu_1)");
    }

    SpectrumResult r;
    const size_t keep = std::min<size_t>(neg.size(), j_max);
    r.mu.assign(neg.begin(), neg.begin() + keep);
    r.refine_error.assign(err.begin(), err.begin() + keep);
    r.bc = BoundaryCondition::whole_line_truncated;
    r.n = n;
    r.n_negative = static_cast<int>(neg.size());
    return r;
}

} // namespace leakywire
