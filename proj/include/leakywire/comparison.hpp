#pragma once

#include "leakywire/geometry.hpp"

#include <complex>
#include <vector>

namespace leakywire {

enum class BoundaryCondition {
    periodic,
    dirichlet,
    neumann,
    floquet,
    whole_line_truncated
};

/// Second-order finite-difference discretization of S = -d^2/ds^2 - kappa^2/4.
/// Mesh conventions: cyclic nodes i*ds (periodic/floquet, ds = L/n); interior
/// vertex nodes (i+1)*ds (dirichlet / truncated whole line, ds = L/(n+1));
/// cell centers (i+1/2)*ds with mirror closure (neumann, ds = L/n).
struct DiscreteOperator {
    int n = 0;
    double delta_s = 0.0;
    std::vector<double> potential; // -kappa(s_i)^2 / 4
    BoundaryCondition bc = BoundaryCondition::periodic;
    std::complex<double> phase{1.0, 0.0}; // floquet only, |phase| = 1
    double L = 0.0;
    double s0 = 0.0; // physical coordinate of the mesh origin
    // retained so refined solves can resample the potential at 2n;
    // empty for hand-assembled operators (use eigenvalues_raw then)
    CurvatureProfile profile;
};

struct SpectrumResult {
    std::vector<double> mu;           // ascending
    std::vector<double> refine_error; // |mu(n) - mu(2n)| per eigenvalue
    BoundaryCondition bc = BoundaryCondition::periodic;
    int n = 0;
    int n_negative = 0; // entries of mu below zero
};

struct BandTable {
    std::vector<double> thetas;             // Brillouin grid in [-pi/K, pi/K)
    std::vector<std::vector<double>> bands; // bands[theta_index][j], ascending
    double K = 0.0;
};

DiscreteOperator build_operator(const CurvatureProfile& profile,
                                BoundaryCondition bc, int n,
                                std::complex<double> phase = {1.0, 0.0});

/// Lowest `count` eigenvalues, Richardson-extrapolated across n and 2n.
SpectrumResult eigenvalues(const DiscreteOperator& op, int count);

/// Single-grid solve without extrapolation (refine_error = 0). Exposes the
/// raw O(n^-2) discretization; also works for hand-assembled operators.
SpectrumResult eigenvalues_raw(const DiscreteOperator& op, int count);

BandTable floquet_spectrum(const CurvatureProfile& profile, double K,
                           int theta_count, int j_max, int n = 1024);

/// Negative spectrum of the whole-line operator via Dirichlet truncation;
/// enforces the curvature-decay admissibility fit and an R-doubling
/// convergence gate. mu holds only the negative eigenvalues.
SpectrumResult infinite_curve_spectrum(const CurvatureProfile& profile,
                                       int j_max, int n = 4096);

} // namespace leakywire
