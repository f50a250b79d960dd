"""Deterministic radial/angular quadrature for R^n, n <= 3.

Radial integration is adaptive Gauss-Kronrod (15/7) with panels split at
declared breakpoints; angular integration is a fixed product rule per
dimension (two-point for n=1, equispaced trapezoid on the circle for n=2,
Gauss-Legendre x trapezoid sphere rule for n=3). Panels are always reduced in
ascending position order, so results do not depend on evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import IntegrandEvaluationError, InvalidInputError

__all__ = ["QuadratureResult", "integrate_radial", "integrate_annulus", "angular_rule"]

DEFAULT_TOL = 1e-8
_MAX_PANELS = 4000


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    nodes_used: int


def _panel_values(g, edges_lo, edges_hi):
    mids = 0.5 * (edges_lo + edges_hi)
    halfs = 0.5 * (edges_hi - edges_lo)
    nodes = mids[:, None] + halfs[:, None] * _kernels.NODES15[None, :]
    fv = np.asarray(g(nodes.ravel()), dtype=float).reshape(nodes.shape)
    if not np.all(np.isfinite(fv)):
        bad = nodes.ravel()[np.flatnonzero(~np.isfinite(fv.ravel()))[0]]
        raise IntegrandEvaluationError(
            f"integrand returned a non-finite value at r = {bad!r}", node=bad
        )
    vals, errs = _kernels.gk15_panels(fv, halfs)
    return vals, errs


def integrate_radial(g, r_lo, r_hi, tol=DEFAULT_TOL, breakpoints=()):
    """Adaptive integral of g over (r_lo, r_hi).

    g must be vectorized: g(r_array) -> value_array. breakpoints are radii
    where g may jump; panels never straddle them.
    """
    if not (0.0 < r_lo < r_hi < np.inf):
        raise InvalidInputError(f"need 0 < r_lo < r_hi < inf, got ({r_lo}, {r_hi})")
    if tol <= 0:
        raise InvalidInputError("tol must be positive")
    cuts = sorted({float(b) for b in breakpoints if r_lo < b < r_hi})
    edges = np.array([r_lo, *cuts, r_hi])
    lo = edges[:-1].copy()
    hi = edges[1:].copy()
    vals, errs = _panel_values(g, lo, hi)
    nodes_used = 15 * lo.size
    while True:
        order = np.argsort(lo, kind="stable")
        lo, hi, vals, errs = lo[order], hi[order], vals[order], errs[order]
        total = _kernels.ordered_sum(vals)
        toterr = _kernels.ordered_sum(errs)
        target = tol * max(1.0, abs(total))
        if toterr <= target or lo.size >= _MAX_PANELS:
            return QuadratureResult(value=float(total), error_estimate=float(toterr),
                                    nodes_used=nodes_used)
        # Split every panel whose error exceeds its fair share of the budget.
        split = errs > target / (2.0 * lo.size)
        if not np.any(split):
            split = errs == errs.max()
        keep_lo, keep_hi = lo[~split], hi[~split]
        keep_vals, keep_errs = vals[~split], errs[~split]
        mid = 0.5 * (lo[split] + hi[split])
        new_lo = np.concatenate([lo[split], mid])
        new_hi = np.concatenate([mid, hi[split]])
        new_vals, new_errs = _panel_values(g, new_lo, new_hi)
        nodes_used += 15 * new_lo.size
        lo = np.concatenate([keep_lo, new_lo])
        hi = np.concatenate([keep_hi, new_hi])
        vals = np.concatenate([keep_vals, new_vals])
        errs = np.concatenate([keep_errs, new_errs])


def angular_rule(n, order=None):
    """Unit directions and surface-measure weights: sum(w) = |S^(n-1)|.

    n=1: the two points +-1. n=2: `order` equispaced angles (default 64).
    n=3: Gauss-Legendre in cos(theta) x equispaced azimuth, exact for
    spherical polynomials well past degree 7.
    """
    if n == 1:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])
    if n == 2:
        m = int(order or 64)
        th = 2.0 * np.pi * np.arange(m) / m
        dirs = np.stack([np.cos(th), np.sin(th)], axis=-1)
        return dirs, np.full(m, 2.0 * np.pi / m)
    if n == 3:
        mpol = max(4, int(order or 8))
        maz = 2 * mpol
        mu, wmu = np.polynomial.legendre.leggauss(mpol)
        ph = 2.0 * np.pi * np.arange(maz) / maz
        mu_g, ph_g = np.meshgrid(mu, ph, indexing="ij")
        w_g = np.broadcast_to(wmu[:, None] * (2.0 * np.pi / maz), mu_g.shape)
        s = np.sqrt(np.maximum(1.0 - mu_g ** 2, 0.0))
        dirs = np.stack([s * np.cos(ph_g), s * np.sin(ph_g), mu_g], axis=-1)
        return dirs.reshape(-1, 3), w_g.reshape(-1).copy()
    raise InvalidInputError(f"dimension must be 1, 2 or 3, got {n}")


def integrate_annulus(g, n, r_lo, r_hi, tol=DEFAULT_TOL, breakpoints=(), angular_order=None):
    """Integral of g over the annulus {r_lo <= |x| <= r_hi} in R^n.

    g must be vectorized: g(points) with points of shape (N, n). The angular
    rule is fixed; adaptivity lives on the radial axis.
    """
    dirs, w_ang = angular_rule(n, angular_order)

    def radial_g(r):
        pts = (r[:, None, None] * dirs[None, :, :]).reshape(-1, n)
        fv = np.asarray(g(pts), dtype=float).reshape(r.size, dirs.shape[0])
        # Fixed-order angular reduction keeps results thread-count independent.
        ang = _kernels.weighted_rows_sum(w_ang, np.ascontiguousarray(fv.T))
        return (r ** (n - 1)) * ang

    return integrate_radial(radial_g, r_lo, r_hi, tol=tol, breakpoints=breakpoints)
