#pragma once

namespace leakywire {

inline constexpr double kPsiOne = -0.5772156649015329; // digamma(1) = -Euler gamma

/// Modified Bessel values I0, I1, K0, K1 at a common argument.
struct BesselQuad {
    double x;
    double i0;
    double i1;
    double k0;
    double k1;
    double est_error; // relative accuracy estimate
};

/// Evaluate I0, I1, K0, K1 at x. Valid for 0 < x <= 700.
BesselQuad bessel_quad(double x);

/// Scaled variants: i0s = e^{-x} I0, i1s = e^{-x} I1, k0s = e^{x} K0,
/// k1s = e^{x} K1. Safe far beyond the unscaled overflow/underflow range;
/// used by the transverse root solver in the strong-coupling regime.
struct BesselQuadScaled {
    double x;
    double i0s;
    double i1s;
    double k0s;
    double k1s;
};

BesselQuadScaled bessel_quad_scaled(double x);

} // namespace leakywire
