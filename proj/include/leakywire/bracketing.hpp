#pragma once

#include "leakywire/comparison.hpp"
#include "leakywire/geometry.hpp"
#include "leakywire/transverse.hpp"

#include <vector>

namespace leakywire {

/// Tabulated tube weight h = 1 + r kappa(s) cos(theta - beta(s)) on a
/// (s, r, theta) grid, r in [0, d), theta in [0, 2 pi). The s-derivatives are
/// taken at fixed theta - beta (i.e. they differentiate kappa only), which is
/// what makes every sup-based constant independent of the frame angle beta.
struct TubeFactorField {
    std::vector<double> s, r, theta;
    std::vector<double> beta;         // beta(s); zeros when not supplied
    std::vector<double> h, h_s, h_ss; // flattened [is][ir][itheta]
    double d = 0.0;
    int ns = 0, nr = 0, nt = 0;

    double at(const std::vector<double>& v, int is, int ir, int it) const {
        return v[(static_cast<size_t>(is) * nr + ir) * nt + it];
    }
};

TubeFactorField tube_factor_field(const CurvatureProfile& profile, double d,
                                  int nr = 16, int nt = 64,
                                  const std::vector<double>& beta = {});

struct EffectivePotential {
    std::vector<double> V;      // same layout as the field
    double sup_deviation = 0.0; // sup |V + kappa^2/4| over the grid
};

/// V = -kappa^2/(4 h^2) + h_ss/(2 h^3) - 5 h_s^2/(4 h^4).
EffectivePotential effective_potential(const TubeFactorField& field,
                                       const CurvatureProfile& profile);

struct TubeConstants {
    double d = 0.0;
    double C_h = 0.0; // h^{-2} in [1 - C_h d, 1 + C_h d] on the grid
    double C_V = 0.0; // |V + kappa^2/4| <= C_V d on the grid
    double M = 0.0;   // Robin coefficient: curvature part of the boundary trace
    double raw_boundary_trace = 0.0; // informational: keeps the pure 1/(2r) part
    double v = 0.0;   // (1/4) sup kappa^2
    double w_d = 0.0; // 1/2 - M d, recorded even when <= 0
    bool w_d_positive = false;

    double C_h_minus() const { return 1.0 - C_h * d; }
    double C_h_plus() const { return 1.0 + C_h * d; }
};

TubeConstants estimate_constants(const CurvatureProfile& profile, double d,
                                 int nr = 16, int nt = 64,
                                 const std::vector<double>& beta = {});

struct BracketPair {
    std::vector<double> lower, upper; // l_j^-(d), l_j^+(d), ascending
};

/// Eigenvalues of L_d^{-/+} = -C_h^{-/+} d^2/ds^2 - kappa^2/4 -/+ C_V d.
BracketPair longitudinal_bounds(const CurvatureProfile& profile,
                                const TubeConstants& consts,
                                BoundaryCondition bc, int j_max, int n = 2048);

struct SqueezeRow {
    int j = 0;
    double lower = 0.0;  // l_j^-(d) + t^-
    double center = 0.0; // xi_alpha + mu_j
    double upper = 0.0;  // l_j^+(d) + t^+
    bool pass = false;
    bool bound_state = false; // mu_j < 0: predicted below the threshold xi
};

struct SqueezeReport {
    double alpha = 0.0;
    double d = 0.0;
    int j_max = 0;
    std::vector<SqueezeRow> rows;
    double t_minus = 0.0, t_plus = 0.0;
    TubeConstants constants;
    bool all_pass = false;
    int n_bound = 0;
};

/// Two-sided certification lower <= xi + mu_j <= upper at relative tolerance
/// 1e-9. d <= 0 selects the canonical rule d = e^{pi alpha}.
SqueezeReport squeeze_check(const CurvatureProfile& profile, double alpha,
                            int j_max, double d = 0.0,
                            BoundaryCondition bc = BoundaryCondition::periodic,
                            int n = 2048);

} // namespace leakywire
