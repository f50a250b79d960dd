"""Adaptive radial quadrature and the fixed angular product rules."""

import numpy as np
import pytest

from hauscomm import quadrature
from hauscomm.errors import IntegrandEvaluationError, InvalidInputError


def test_radial_closed_forms():
    res = quadrature.integrate_radial(lambda r: 1.0 / r, 1.0, 2.0, tol=1e-12)
    assert abs(res.value - np.log(2.0)) < 1e-12
    res = quadrature.integrate_radial(lambda r: r ** 3, 0.5, 2.0, tol=1e-12)
    assert abs(res.value - (2.0 ** 4 - 0.5 ** 4) / 4) < 1e-12


def test_radial_breakpoints_resolve_jumps():
    def g(r):
        return np.where(r < 1.3, 1.0, 0.0)

    res = quadrature.integrate_radial(g, 1.0, 2.0, tol=1e-12, breakpoints=[1.3])
    assert abs(res.value - 0.3) < 1e-13
    assert res.error_estimate < 1e-12


def test_radial_adapts_without_breakpoint_hint():
    def g(r):
        return np.where(r < 1.3, 1.0, 0.0)

    res = quadrature.integrate_radial(g, 1.0, 2.0, tol=1e-6)
    assert abs(res.value - 0.3) < 1e-5


def test_tol_refinement_monotone():
    def g(r):
        return np.sin(10.0 * r) ** 2 / r

    exact = quadrature.integrate_radial(g, 0.1, 5.0, tol=1e-13).value
    prev = np.inf
    for tol in (1e-3, 1e-6, 1e-9):
        err = abs(quadrature.integrate_radial(g, 0.1, 5.0, tol=tol).value - exact)
        assert err <= max(prev, tol)
        prev = err


def test_determinism_repeated_calls():
    def g(r):
        return np.exp(-r) * np.cos(3 * r)

    a = quadrature.integrate_radial(g, 0.01, 10.0, tol=1e-10)
    b = quadrature.integrate_radial(g, 0.01, 10.0, tol=1e-10)
    assert a.value == b.value and a.error_estimate == b.error_estimate


def test_invalid_bounds_and_tol():
    with pytest.raises(InvalidInputError):
        quadrature.integrate_radial(lambda r: r, 2.0, 1.0)
    with pytest.raises(InvalidInputError):
        quadrature.integrate_radial(lambda r: r, 0.0, 1.0)
    with pytest.raises(InvalidInputError):
        quadrature.integrate_radial(lambda r: r, 1.0, 2.0, tol=0.0)


def test_nonfinite_integrand_raises():
    def g(r):
        with np.errstate(divide="ignore"):
            return 1.0 / (r - 1.5)

    # No breakpoint hint: the centre Kronrod node of (1, 2) sits exactly on
    # the pole, so the evaluation guard must fire.
    with pytest.raises(IntegrandEvaluationError):
        quadrature.integrate_radial(g, 1.0, 2.0)


@pytest.mark.parametrize("n,area", [(1, 2.0), (2, 2 * np.pi), (3, 4 * np.pi)])
def test_angular_rule_total_measure(n, area):
    dirs, w = quadrature.angular_rule(n)
    assert np.allclose(np.linalg.norm(dirs, axis=1), 1.0)
    assert np.isclose(np.sum(w), area, rtol=1e-12)


def test_angular_rule_first_moments_vanish():
    for n in (2, 3):
        dirs, w = quadrature.angular_rule(n)
        assert np.allclose(w @ dirs, 0.0, atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_annulus_volume(n):
    vol_ball = {1: 2.0, 2: np.pi, 3: 4 * np.pi / 3}[n]

    def one(pts):
        return np.ones(pts.shape[0])

    res = quadrature.integrate_annulus(one, n, 0.5, 2.0, tol=1e-12)
    exact = vol_ball * (2.0 ** n - 0.5 ** n)
    assert np.isclose(res.value, exact, rtol=1e-10)


def test_annulus_gaussian_n2():
    # integral over R^2 of exp(-|x|^2) = pi; the annulus 1e-6..10 captures it.
    def g(pts):
        return np.exp(-np.sum(pts ** 2, axis=-1))

    res = quadrature.integrate_annulus(g, 2, 1e-6, 10.0, tol=1e-12)
    assert np.isclose(res.value, np.pi, rtol=1e-9)


def test_annulus_respects_angular_order():
    def g(pts):
        return 1.0 + pts[:, 0] ** 2

    full = quadrature.integrate_annulus(g, 2, 0.5, 1.0, tol=1e-12)
    small = quadrature.integrate_annulus(g, 2, 0.5, 1.0, tol=1e-12, angular_order=8)
    # x1^2 has angular degree 2: 8 equispaced nodes are exact.
    assert np.isclose(full.value, small.value, rtol=1e-12)
