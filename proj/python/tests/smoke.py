"""End-to-end smoke test of the python bindings."""

import math

import leakywire as lw


def approx(a, b, tol):
    assert abs(a - b) <= tol * max(1.0, abs(b)), (a, b)


def main():
    # coupling constants
    cs = lw.coupling_state(-1.0)
    xi = -4.0 * math.exp(2.0 * (2.0 * math.pi - 0.5772156649015329))
    approx(cs.xi_alpha, xi, 1e-14)
    approx(cs.zeta_alpha, math.sqrt(-xi), 1e-14)

    # circle comparison spectrum: -1/4, then doubly degenerate k^2 - 1/4
    circle = lw.builtin_profile("circle", {"radius": 1.0}, grid=1024)
    approx(circle.L, 2.0 * math.pi, 1e-10)
    res = lw.spectrum(circle, lw.BoundaryCondition.periodic, count=3, n=1024)
    approx(res.mu[0], -0.25, 1e-6)
    approx(res.mu[1], 0.75, 1e-5)
    approx(res.mu[2], 0.75, 1e-5)

    # transverse roots straddle xi strictly
    d = math.exp(-math.pi)
    M = lw.estimate_constants(circle, d).M
    up = lw.solve_dirichlet_root(cs, d)
    dn = lw.solve_robin_root(cs, d, M)
    assert up.energy_gap > 0.0 or math.isfinite(up.log_abs_gap)
    assert dn.energy_gap < 0.0 or math.isfinite(dn.log_abs_gap)

    # squeeze certification
    rep = lw.squeeze_check(circle, -1.5, j_max=3, n=1024)
    assert rep.all_pass
    assert all(r.lower <= r.center <= r.upper for r in rep.rows)

    # asymptotic eigenvalues sit below the threshold
    asym = lw.eigenvalue_asymptotics(circle, -1.5, j_max=3, n=1024)
    assert asym.rows and all(r.lambda_ < 0.0 for r in asym.rows)

    # counting estimate brackets the closed form
    est = lw.counting_function(circle, -2.0)
    assert est.n_lower <= est.n_formula + 1.0
    assert est.n_upper >= est.n_formula - 1.0
    assert est.spread <= 0.01

    # semiclassical rescaling identity
    view = lw.semiclassical_view(circle, 0.0, 0.1, j_max=2, n=512)
    approx(view.xi_rescaled, view.xi_alpha, 1e-13)

    # constant curvature: every gap closed
    prof = lw.profile_from_arrays(
        [2.0 * math.pi * math.sqrt(2.0) * i / 128 for i in range(128)],
        [0.5] * 128,
        lw.CurveMode.periodic,
    )
    gaps = lw.gap_widths(
        lw.band_table_with_edges(prof, 2.0 * math.pi, theta_count=16, j_max=4, n=256)
    )
    assert max(abs(g) for g in gaps.gaps) < 1e-8
    assert not any(gaps.open)

    # error classes surface as python exceptions
    try:
        lw.builtin_profile("klein-bottle")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown builtin must raise")

    print("python smoke: all checks passed")


if __name__ == "__main__":
    main()
