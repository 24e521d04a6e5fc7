#pragma once

#include "leakywire/bracketing.hpp"
#include "leakywire/comparison.hpp"
#include "leakywire/geometry.hpp"

#include <vector>

namespace leakywire {

struct AsymptoticRow {
    int j = 0;
    double lambda = 0.0;     // xi_alpha + mu_j (midpoint of the pair for free ends)
    double pair_lower = 0.0; // free ends: xi + mu_j^N; otherwise = lambda
    double pair_upper = 0.0; // free ends: xi + mu_j^D; otherwise = lambda
    double bracket_lower = 0.0, bracket_upper = 0.0;
    bool has_bracket = false;
    bool two_sided = false;
};

struct AsymptoticSpectrum {
    double alpha = 0.0;
    double d_used = 0.0; // tube radius behind the brackets, 0 when absent
    BoundaryCondition bc = BoundaryCondition::periodic;
    double threshold = 0.0; // xi_alpha, the essential-spectrum edge
    std::vector<AsymptoticRow> rows; // ascending, lambda < 0 only
    int n_negative = 0; // bound-state count for truncated infinite curves
};

/// lambda_j = xi_alpha + mu_j. Loops use the requested closure; free-end
/// curves return the unresolved two-sided (neumann, dirichlet) pair and
/// refuse single-valued closures; truncated infinite curves report the
/// negative spectrum below the threshold xi_alpha.
AsymptoticSpectrum eigenvalue_asymptotics(const CurvatureProfile& profile,
                                          double alpha, BoundaryCondition bc,
                                          int j_max, bool with_brackets,
                                          int n = 2048);

struct CountingEstimate {
    double alpha = 0.0;
    double L = 0.0;
    double v = 0.0;       // (1/4) sup kappa^2
    double n_formula = 0; // (L/pi) sqrt(-xi_alpha)
    long long n_lower = 0, n_upper = 0; // explicit nu_j^+ / nu_j^- counts
    double spread = 0.0;  // (n_upper - n_lower) / n_formula
};

CountingEstimate counting_function(const CurvatureProfile& profile, double alpha);

struct GapReport {
    std::vector<double> gaps; // G_j for j = 1 .. bands-1
    std::vector<bool> open;   // G_j > gap_tol
    double gap_tol = 1e-8;
};

/// Band-edge gap widths: odd j reads the edges at theta = pi/K, even j at
/// theta = 0. The table must contain theta = 0 and two samples just inside
/// the zone edge (see band_table_with_edges); the edge value is the linear
/// limit from inside the half-open zone.
GapReport gap_widths(const BandTable& bands);

/// floquet_spectrum augmented with two samples at pi/K - 2*delta and
/// pi/K - delta, delta = zone width / 1e6, appended after the uniform grid.
BandTable band_table_with_edges(const CurvatureProfile& profile, double K,
                                int theta_count, int j_max, int n = 1024);

struct SemiclassicalRow {
    int j = 0;
    double expansion = 0.0; // xi_alpha + mu_j h^2
    double rescaled = 0.0;  // h^2 (xi_{alpha(h)} + mu_j)
    double difference = 0.0;
};

struct SemiclassicalView {
    double alpha = 0.0;
    double h = 0.0;
    double alpha_of_h = 0.0;    // alpha + (1/2 pi) ln h
    double xi_alpha = 0.0;
    double xi_rescaled = 0.0;   // h^2 xi_{alpha(h)}; equals xi_alpha exactly
    std::vector<SemiclassicalRow> rows;
    double counting = 0.0;      // (L/(pi h)) sqrt(-xi_alpha)
};

SemiclassicalView semiclassical_view(const CurvatureProfile& profile,
                                     double alpha, double h,
                                     BoundaryCondition bc, int j_max,
                                     int n = 2048);

} // namespace leakywire
