"""Function-space norm estimators: identities, exact values, homogeneity,
triangle inequality, and dilation laws."""

import numpy as np
import pytest

from hauscomm import norms
from hauscomm.catalog import (
    dilate,
    linear_combination,
    preset_symbol,
    preset_testfn,
    scale,
)
from hauscomm.domain import RadialGrid
from hauscomm.errors import DomainRestrictionError, InvalidInputError

DEEP = RadialGrid(n=1, k_min=-21, k_max=6)


def test_lp_ball_indicator():
    f = preset_testfn("ball-indicator(1)")
    assert abs(norms.lp_norm(f, 2, DEEP, tol=1e-10) - np.sqrt(2.0)) < 1e-6
    assert abs(norms.lp_norm(f, 1, DEEP, tol=1e-10) - 2.0) < 1e-6


def test_lp_gaussian():
    f = preset_testfn("bump")
    # ||exp(-x^2)||_2 on the line is (pi/2)^(1/4).
    assert abs(norms.lp_norm(f, 2, DEEP, tol=1e-10) - (np.pi / 2) ** 0.25) < 1e-6


def test_lp_dilation_law():
    f = preset_testfn("bump")
    lam, p = 2.0, 3.0
    lhs = norms.lp_norm(dilate(f, lam), p, DEEP, tol=1e-10)
    rhs = lam ** (-1.0 / p) * norms.lp_norm(f, p, DEEP, tol=1e-10)
    # The inner truncation radius bites differently on the two sides.
    assert np.isclose(lhs, rhs, rtol=1e-6)


def test_herz_exact_value():
    f = linear_combination([1.0, 1.0], [preset_testfn("shell-indicator(0)"),
                                        preset_testfn("shell-indicator(1)")])
    v = norms.herz_norm(f, alpha=1.0, p=2.0, q=2.0, k_range=range(-3, 4), n=1, tol=1e-12)
    assert abs(v - 3.0) < 1e-6


def test_herz_alpha_zero_is_lp():
    ks = range(-8, 5)
    grid = RadialGrid(n=1, k_min=-8, k_max=4)
    for name in ("bump", "ball-indicator(1)", "shell-indicator(0)", "power-decay(0.75)"):
        f = preset_testfn(name)
        for p in (1.5, 2.0):
            hz = norms.herz_norm(f, 0.0, p, p, ks, 1, tol=1e-10)
            lp = norms.lp_norm(f, p, grid, tol=1e-10)
            assert np.isclose(hz, lp, rtol=1e-6), name


def test_herz_morrey_collapses_to_herz_at_lam_zero():
    ks = range(-5, 4)
    for name in ("bump", "shell-indicator(0)"):
        f = preset_testfn(name)
        hm = norms.herz_morrey_norm(f, 0.3, 0.0, 1.5, 2.0, ks, 1, tol=1e-10)
        hz = norms.herz_norm(f, 0.3, 1.5, 2.0, ks, 1, tol=1e-10)
        assert abs(hm - hz) < 1e-12 * max(1.0, hz)


def test_norm_homogeneity():
    f = preset_testfn("bump")
    ks = range(-4, 4)
    grid = RadialGrid(n=1, k_min=-4, k_max=3)
    c = -2.5
    assert np.isclose(norms.lp_norm(scale(f, c), 2, grid), abs(c) * norms.lp_norm(f, 2, grid),
                      rtol=1e-9)
    assert np.isclose(norms.herz_norm(scale(f, c), 0.2, 2, 3, ks, 1),
                      abs(c) * norms.herz_norm(f, 0.2, 2, 3, ks, 1), rtol=1e-9)
    battery = norms.default_cube_battery(grid)
    assert np.isclose(norms.morrey_norm(scale(f, c), 2, 0.5, battery, 1),
                      abs(c) * norms.morrey_norm(f, 2, 0.5, battery, 1), rtol=1e-9)


def test_norm_triangle_inequality():
    f = preset_testfn("bump")
    g = preset_testfn("ball-indicator(1)")
    fg = linear_combination([1.0, 1.0], [f, g])
    grid = RadialGrid(n=1, k_min=-6, k_max=3)
    ks = range(-6, 4)
    assert norms.lp_norm(fg, 2, grid) <= (norms.lp_norm(f, 2, grid)
                                          + norms.lp_norm(g, 2, grid)) * (1 + 1e-8)
    assert norms.herz_norm(fg, 0.2, 2, 2, ks, 1) <= (
        norms.herz_norm(f, 0.2, 2, 2, ks, 1)
        + norms.herz_norm(g, 0.2, 2, 2, ks, 1)) * (1 + 1e-8)


def test_morrey_norm_oracle():
    # f = |x|^{-1/4} near the origin: the Morrey quotient peaks on small
    # origin-centered cubes; value computed from the defining integral.
    f = preset_testfn("power-decay(0.25,1e-12)")
    grid = RadialGrid(n=1, k_min=-6, k_max=3)
    battery = norms.default_cube_battery(grid, depth=6)
    p, lam = 2.0, 0.5
    v = norms.morrey_norm(f, p, lam, battery, 1, nodes_per_axis=512)
    # Scale-invariant extremal: s^{-1/2} int_{-s/2}^{s/2} |x|^{-1/2} dx = 2 sqrt(2)
    # on every origin-centered cube, so the norm is (2 sqrt 2)^{1/2} = 2^{3/4}.
    assert v == pytest.approx(2.0 ** 0.75, rel=0.05)


def test_morrey_rejects_bad_lam():
    f = preset_testfn("bump")
    battery = norms.default_cube_battery(RadialGrid(n=1, k_min=-2, k_max=2))
    with pytest.raises(DomainRestrictionError):
        norms.morrey_norm(f, 2, 1.5, battery, 1)
    with pytest.raises(DomainRestrictionError):
        norms.morrey_norm(f, 2, 0.0, battery, 1)


def test_cmo_halfspace_value():
    b = preset_symbol("halfspace")
    ladder = [2.0 ** k for k in range(-4, 5)]
    v = norms.cmo_norm(b, 2, ladder, 1, tol=1e-10)
    assert abs(v - 0.5) < 1e-3


def test_cmo_monotone_in_q():
    b = preset_symbol("log-bump")
    ladder = [0.5, 1.0, 2.0, 4.0]
    vals = [norms.cmo_norm(b, q, ladder, 1, tol=1e-8) for q in (1.5, 2.0, 3.0, 4.0)]
    assert all(a <= b_ * (1 + 1e-9) for a, b_ in zip(vals, vals[1:]))


def test_cmo_rejects_bad_q():
    b = preset_symbol("halfspace")
    with pytest.raises(DomainRestrictionError):
        norms.cmo_norm(b, 1.0, [1.0], 1)


def test_lipschitz_power_symbol():
    grid = RadialGrid(n=1, k_min=-8, k_max=4)
    pairs = norms.default_pair_battery(grid, seed=0)
    for beta in (0.25, 0.5, 0.75):
        b = preset_symbol(f"power-beta({beta})")
        v = norms.lipschitz_norm(b, beta, pairs)
        assert abs(v - 1.0) < 0.02


def test_lipschitz_rejects_bad_beta():
    b = preset_symbol("power-beta(0.5)")
    with pytest.raises(DomainRestrictionError):
        norms.lipschitz_norm(b, 1.0, [(np.zeros(1), np.ones(1))])


def test_triebel_lizorkin_frozen_oracle():
    # Frozen reference for the oscillation-form smoothness norm of the
    # Gaussian bump at beta = 1/4, p = 2 on the default ladder; guards
    # against silent drift in the cube battery or the oscillation engine.
    f = preset_testfn("bump")
    grid = RadialGrid(n=1, k_min=-4, k_max=3)
    v = norms.triebel_lizorkin_norm(f, 0.25, 2.0, grid, tol=1e-6, nodes_per_axis=64)
    assert v == pytest.approx(0.7062246759607393, rel=1e-6)


def test_triebel_lizorkin_zero_for_constants():
    one = preset_testfn("one")
    grid = RadialGrid(n=1, k_min=-2, k_max=2)
    assert norms.triebel_lizorkin_norm(one, 0.5, 2.0, grid, tol=1e-6) < 1e-10


def test_shell_lq_norm_indicator():
    f = preset_testfn("shell-indicator(0)")
    # |C_0| = 1 in n = 1 (two-sided), so every q gives 1.
    for q in (1.0, 2.0, 4.0):
        assert np.isclose(norms.shell_lq_norm(f, q, 0, 1, tol=1e-12), 1.0, rtol=1e-9)
    assert norms.shell_lq_norm(f, 2, 3, 1, tol=1e-12) < 1e-9


def test_param_validation():
    f = preset_testfn("bump")
    grid = RadialGrid(n=1, k_min=-2, k_max=2)
    with pytest.raises(InvalidInputError):
        norms.lp_norm(f, 0.5, grid)
    with pytest.raises(InvalidInputError):
        norms.herz_norm(f, 0.0, -1.0, 2.0, range(0, 2), 1)
    with pytest.raises(InvalidInputError):
        norms.herz_morrey_norm(f, 0.0, -0.1, 2.0, 2.0, range(0, 2), 1)
    with pytest.raises(InvalidInputError):
        norms.herz_norm(f, 0.0, 2.0, 2.0, [], 1)
