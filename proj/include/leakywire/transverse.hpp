#pragma once

#include <vector>

namespace leakywire {

/// Coupling parameter alpha with the bound-state energy of the 2D point
/// interaction, xi = -4 exp(2(-2 pi alpha + psi(1))), and zeta = sqrt(-xi).
struct CouplingState {
    double alpha;
    double xi_alpha;
    double zeta_alpha;
};

CouplingState coupling_state(double alpha);

enum class TransverseVariant { dirichlet_plus, robin_minus };

/// One negative eigenvalue t = -k^2 of the transverse disc operator.
///
/// In the strong-coupling regime the distance |t - xi| shrinks like
/// exp(-2 d zeta) and quickly drops below the double-precision resolution of
/// t itself; `energy_gap` then underflows to zero while `log_abs_gap` stays
/// finite and is the quantity to use for decay-rate fits and strict-ordering
/// checks.
struct TransverseEigenvalue {
    TransverseVariant variant;
    double d;
    double M;           // Robin coefficient (robin_minus only, else 0)
    double zeta;        // zeta_alpha of the coupling used
    double k_root;      // root of k = zeta * eta(k)
    double energy;      // t = -k_root^2
    double energy_gap;  // t - xi; > 0 for dirichlet_plus, < 0 for robin_minus
    double log_abs_gap; // ln|t - xi|
    double residual;    // |k - zeta*eta(k)| at the root
    double bracket_lo;  // final enclosing interval for k
    double bracket_hi;
};

/// Root of x = zeta * exp(-K0(xd)/I0(xd)); requires the solvability condition
/// g_{alpha,d} = (1/2) e^{-psi(1)} d zeta > 1. The root lies in (0, zeta).
TransverseEigenvalue solve_dirichlet_root(const CouplingState& cs, double d);

/// Root of x = zeta * exp(-S_K(xd)/S_I(xd)) with
/// S_K(z) = -K1(z) z + w_d K0(z), S_I(z) = I1(z) z + w_d I0(z),
/// w_d = 1/2 - M d > 0. The root lies above zeta.
TransverseEigenvalue solve_robin_root(const CouplingState& cs, double d, double M);

/// Closed-form envelope S = c1 zeta^2 sqrt(d zeta) exp(-c2 d zeta).
struct EnvelopeEstimate {
    double value;
    double c1, c2;
    double d, zeta;
};

EnvelopeEstimate envelope(const CouplingState& cs, double d, double c1, double c2);

/// Least-squares fit of the envelope constants from solver output:
/// log|t - xi| = ln c1 + 2 ln zeta + (1/2) ln(d zeta) - c2 (d zeta).
/// raw_slope is the plain regression slope of log|t - xi| against d zeta.
struct EnvelopeFit {
    double c1, c2;
    double raw_slope;
};

EnvelopeFit fit_envelope(const std::vector<TransverseEigenvalue>& solutions);

} // namespace leakywire
