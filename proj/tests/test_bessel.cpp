#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "leakywire/bessel.hpp"
#include "leakywire/errors.hpp"
#include "oracles.hpp"

#include <cmath>

using leakywire::bessel_quad;
using leakywire::bessel_quad_scaled;

// Frozen values computed with the integral-representation oracle
// (tests/oracles.hpp) at x = 1.
TEST_CASE("values at x = 1 against the integral oracle") {
    const auto q = bessel_quad(1.0);
    CHECK(q.i0 == doctest::Approx(1.26606587775201).epsilon(1e-12));
    CHECK(q.k0 == doctest::Approx(0.421024438240708).epsilon(1e-12));
    CHECK(q.i1 == doctest::Approx(0.565159103992485).epsilon(1e-12));
    CHECK(q.k1 == doctest::Approx(0.601907230197235).epsilon(1e-12));
    // and the oracle itself agrees live
    CHECK(q.i0 == doctest::Approx(oracle::bessel_i(0, 1.0)).epsilon(1e-13));
    CHECK(q.k0 == doctest::Approx(oracle::bessel_k(0, 1.0)).epsilon(1e-13));
}

TEST_CASE("log grid oracle comparison") {
    // coarse version of acceptance criterion 1, for fast feedback
    for (double x = 1e-4; x <= 30.0; x *= 2.3) {
        const auto q = bessel_quad(x);
        CHECK(q.i0 == doctest::Approx(oracle::bessel_i(0, x)).epsilon(1e-12));
        CHECK(q.i1 == doctest::Approx(oracle::bessel_i(1, x)).epsilon(1e-12));
        CHECK(q.k0 == doctest::Approx(oracle::bessel_k(0, x)).epsilon(1e-12));
        CHECK(q.k1 == doctest::Approx(oracle::bessel_k(1, x)).epsilon(1e-12));
    }
}

TEST_CASE("small-x limits") {
    const auto q = bessel_quad(1e-6);
    CHECK(q.i0 == doctest::Approx(1.0).epsilon(1e-12));
    // k0(x) -> -ln(x/2) + psi(1) as x -> 0
    const double ref = -std::log(0.5e-6) + leakywire::kPsiOne;
    CHECK(q.k0 == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("Wronskian identity on a log grid") {
    for (double x = 1e-4; x <= 100.0; x *= 1.45) {
        const auto q = bessel_quad(x);
        const double w = q.i0 * q.k1 + q.i1 * q.k0;
        CHECK(w == doctest::Approx(1.0 / x).epsilon(1e-11));
    }
}

TEST_CASE("monotonicity and ordering invariants") {
    double prev_i0 = 0.0, prev_i1 = -1.0, prev_k0 = 1e300, prev_k1 = 1e300;
    for (double x = 1e-3; x <= 50.0; x *= 1.3) {
        const auto q = bessel_quad(x);
        CHECK(q.i0 >= 1.0);
        CHECK(q.i1 >= 0.0);
        CHECK(q.k0 > 0.0);
        CHECK(q.k1 > q.k0);
        CHECK(q.i0 > prev_i0);
        CHECK(q.i1 > prev_i1);
        CHECK(q.k0 < prev_k0);
        CHECK(q.k1 < prev_k1);
        prev_i0 = q.i0;
        prev_i1 = q.i1;
        prev_k0 = q.k0;
        prev_k1 = q.k1;
    }
}

TEST_CASE("large-x decay of K0") {
    // k0(x) e^x sqrt(x) hovers around sqrt(pi/2)
    const double target = std::sqrt(3.14159265358979323846 / 2.0);
    for (double x = 10.0; x <= 100.0; x *= 10.0) {
        const auto q = bessel_quad(x);
        const double v = q.k0 * std::exp(x) * std::sqrt(x);
        CHECK(v / target > 0.9);
        CHECK(v / target < 1.1);
    }
}

TEST_CASE("scaled variants agree with unscaled where both are valid") {
    for (double x : {0.5, 3.0, 40.0, 300.0}) {
        const auto q = bessel_quad(x);
        const auto s = bessel_quad_scaled(x);
        CHECK(s.i0s == doctest::Approx(q.i0 * std::exp(-x)).epsilon(1e-13));
        CHECK(s.k0s == doctest::Approx(q.k0 * std::exp(x)).epsilon(1e-13));
        CHECK(s.i1s == doctest::Approx(q.i1 * std::exp(-x)).epsilon(1e-13));
        CHECK(s.k1s == doctest::Approx(q.k1 * std::exp(x)).epsilon(1e-13));
    }
    // far beyond the unscaled range
    const auto s = bessel_quad_scaled(2000.0);
    CHECK(std::isfinite(s.k0s));
    CHECK(s.k0s > 0.0);
    CHECK(s.k1s > s.k0s);
}

TEST_CASE("argument guards") {
    CHECK_THROWS_AS(bessel_quad(0.0), leakywire::Error);
    CHECK_THROWS_AS(bessel_quad(-1.0), leakywire::Error);
    CHECK_THROWS_AS(bessel_quad(701.0), leakywire::Error);
}
