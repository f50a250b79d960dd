"""Discrete estimators for the function-space norms: Lebesgue, Morrey, Herz,
Herz-Morrey, central mean oscillation, Lipschitz, and the oscillation form of
the smoothness norm.

Every "sup over all radii / cubes / shifts" becomes a maximum over a
documented geometric ladder. All quadrature-backed norms integrate over the
truncated annulus carried by the RadialGrid, with panels split at the
field's declared jump radii.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels, maximal, quadrature
from .catalog import ScalarField
from .domain import Cube, RadialGrid
from .errors import DomainRestrictionError, InvalidInputError

__all__ = [
    "NormParams",
    "lp_norm",
    "morrey_norm",
    "herz_norm",
    "herz_morrey_norm",
    "cmo_norm",
    "lipschitz_norm",
    "triebel_lizorkin_norm",
    "shell_lq_norm",
    "default_cube_battery",
    "default_radius_ladder",
    "default_pair_battery",
]

_BALL_VOLUME = {1: 2.0, 2: math.pi, 3: 4.0 * math.pi / 3.0}


@dataclass(frozen=True)
class NormParams:
    """Exponent bundle shared by the harness and the norm estimators."""

    which: str
    p: Optional[float] = None
    q: Optional[float] = None
    p1: Optional[float] = None
    p2: Optional[float] = None
    q1: Optional[float] = None
    q2: Optional[float] = None
    alpha: Optional[float] = None
    lam: Optional[float] = None
    beta: Optional[float] = None
    k_min: int = -4
    k_max: int = 4
    ladder_depth: int = 3


def _grid_splits(f: ScalarField, grid: RadialGrid):
    """Jump radii of f plus the dyadic shell edges. Seeding the adaptive
    quadrature with one panel per shell keeps narrow features from being
    stepped over on the wide truncated annulus."""
    edges = [2.0 ** k for k in range(grid.k_min - 1, grid.k_max + 1)]
    return tuple(f.breakpoints) + tuple(edges)


def lp_norm(f: ScalarField, p, grid: RadialGrid, tol=1e-8, angular_order=None) -> float:
    """(integral over the grid annulus of |f|^p)^(1/p)."""
    if p < 1:
        raise InvalidInputError(f"lp_norm needs p >= 1, got {p}")

    def g(pts):
        return np.abs(f.evaluate(pts)) ** p

    res = quadrature.integrate_annulus(g, grid.n, grid.r_lo, grid.r_hi, tol=tol,
                                       breakpoints=_grid_splits(f, grid),
                                       angular_order=angular_order)
    return max(res.value, 0.0) ** (1.0 / p)


def shell_lq_norm(f: ScalarField, q, k, n, tol=1e-8, angular_order=None) -> float:
    """L^q norm of f over the dyadic shell C_k."""
    lo, hi = 2.0 ** (k - 1), 2.0 ** k

    def g(pts):
        return np.abs(f.evaluate(pts)) ** q

    res = quadrature.integrate_annulus(g, n, lo, hi, tol=tol, breakpoints=f.breakpoints,
                                       angular_order=angular_order)
    return max(res.value, 0.0) ** (1.0 / q)


def herz_norm(f: ScalarField, alpha, p, q, k_range, n, tol=1e-8,
              angular_order=None) -> float:
    """Dyadic-shell norm: (sum_k 2^(k alpha p) ||f||_{L^q(C_k)}^p)^(1/p)."""
    if p <= 0 or q <= 0:
        raise InvalidInputError("herz_norm needs 0 < p, q")
    ks = sorted(k_range)
    if not ks:
        raise InvalidInputError("shell range must be nonempty")
    terms = np.array([
        2.0 ** (k * alpha * p)
        * shell_lq_norm(f, q, k, n, tol=tol, angular_order=angular_order) ** p
        for k in ks
    ])
    return float(_kernels.ordered_sum(terms) ** (1.0 / p))


def herz_morrey_norm(f: ScalarField, alpha, lam, p, q, k_range, n, tol=1e-8,
                     angular_order=None) -> float:
    """sup over truncation points k0 of 2^(-k0 lam) (sum_{k <= k0} ...)^(1/p)."""
    if lam < 0:
        raise InvalidInputError(f"herz_morrey_norm needs lam >= 0, got {lam}")
    if p <= 0 or q <= 0:
        raise InvalidInputError("herz_morrey_norm needs 0 < p, q")
    ks = sorted(k_range)
    if not ks:
        raise InvalidInputError("shell range must be nonempty")
    best = 0.0
    partial = 0.0
    for k in ks:
        partial += (2.0 ** (k * alpha * p)
                    * shell_lq_norm(f, q, k, n, tol=tol, angular_order=angular_order) ** p)
        best = max(best, 2.0 ** (-k * lam) * partial ** (1.0 / p))
    return float(best)


def morrey_norm(f: ScalarField, p, lam, battery, n, nodes_per_axis=64) -> float:
    """max over the cube battery of (side^(-lam) integral_Q |f|^p)^(1/p)."""
    if not 1 <= p < np.inf:
        raise InvalidInputError(f"morrey_norm needs 1 <= p < inf, got {p}")
    if not 0 < lam < n:
        raise DomainRestrictionError(
            f"morrey_norm is defined for 0 < lam < n, got lam = {lam}, n = {n}"
        )
    battery = list(battery)
    if not battery:
        raise InvalidInputError("cube battery must be nonempty")
    best = 0.0
    for cube in sorted(battery, key=lambda c: (c.side, c.center)):
        vals = np.abs(f.evaluate(cube.midpoint_nodes(nodes_per_axis))) ** p
        integral = cube.volume * float(np.mean(vals))
        best = max(best, (cube.side ** (-lam) * integral) ** (1.0 / p))
    return best


def cmo_norm(b: ScalarField, q, radius_ladder, n, tol=1e-8, angular_order=None) -> float:
    """max over the radius ladder of the centered-ball mean-oscillation norm."""
    if not 1 < q < np.inf:
        raise DomainRestrictionError(f"cmo_norm is defined for 1 < q < inf, got {q}")
    radii = sorted(float(r) for r in radius_ladder)
    if not radii or radii[0] <= 0:
        raise InvalidInputError("radius ladder must be nonempty and positive")
    best = 0.0
    for r in radii:
        vol = _BALL_VOLUME[n] * r ** n
        floor = 1e-8 * r
        bps = [x for x in b.breakpoints if floor < x < r]
        mean_res = quadrature.integrate_annulus(b.evaluate, n, floor, r, tol=tol,
                                                breakpoints=bps,
                                                angular_order=angular_order)
        mean = mean_res.value / vol

        def osc(pts, mean=mean):
            return np.abs(b.evaluate(pts) - mean) ** q

        osc_res = quadrature.integrate_annulus(osc, n, floor, r, tol=tol, breakpoints=bps,
                                               angular_order=angular_order)
        best = max(best, (max(osc_res.value, 0.0) / vol) ** (1.0 / q))
    return best


def lipschitz_norm(b: ScalarField, beta, pairs) -> float:
    """max over (x, h) pairs of |b(x + h) - b(x)| / |h|^beta."""
    if not 0 < beta < 1:
        raise DomainRestrictionError(f"lipschitz_norm is defined for 0 < beta < 1, got {beta}")
    pairs = list(pairs)
    if not pairs:
        raise InvalidInputError("point-pair battery must be nonempty")
    xs = np.asarray([p[0] for p in pairs], dtype=float)
    hs = np.asarray([p[1] for p in pairs], dtype=float)
    hn = np.linalg.norm(hs, axis=1)
    live = hn > 0
    quot = np.abs(b.evaluate(xs[live] + hs[live]) - b.evaluate(xs[live])) / hn[live] ** beta
    return float(np.max(quot)) if quot.size else 0.0


def triebel_lizorkin_norm(f: ScalarField, beta, p, grid: RadialGrid, scales=None,
                          nodes_per_axis=64, tol=1e-6, angular_order=None) -> float:
    """L^p norm over the grid of the beta-weighted sharp mean oscillation.

    This is the equivalent-norm oscillation characterization, not the
    Littlewood-Paley definition.
    """
    if not 0 < beta < 1:
        raise DomainRestrictionError(f"needs 0 < beta < 1, got {beta}")
    if not 1 < p < np.inf:
        raise DomainRestrictionError(f"needs 1 < p < inf, got {p}")
    scales = maximal.default_scales() if scales is None else list(scales)

    def g(pts):
        osc = maximal.sharp_oscillation_many(f, beta, pts, scales=scales,
                                             nodes_per_axis=nodes_per_axis)
        return osc ** p

    res = quadrature.integrate_annulus(g, grid.n, grid.r_lo, grid.r_hi, tol=tol,
                                       breakpoints=_grid_splits(f, grid),
                                       angular_order=angular_order)
    return max(res.value, 0.0) ** (1.0 / p)


# ---------------------------------------------------------------------------
# default ladders and batteries


def default_cube_battery(grid: RadialGrid, depth=3):
    """Cubes centered at the origin and at axis points, dyadic side ladder."""
    sides = [2.0 ** j for j in range(-depth, depth + 1)]
    centers = [np.zeros(grid.n)]
    for k in range(grid.k_min, grid.k_max + 1):
        c = np.zeros(grid.n)
        c[0] = 0.75 * 2.0 ** k  # shell midpoint radius
        centers.append(c)
    battery = []
    for c in centers:
        for s in sides:
            battery.append(Cube(center=tuple(c), side=s))
    return battery


def default_radius_ladder(grid: RadialGrid):
    return [2.0 ** k for k in range(grid.k_min, grid.k_max + 1)]


def default_pair_battery(grid: RadialGrid, h_depth=6, random_pairs=256, seed=0):
    """Difference-quotient battery: grid points x axis-aligned dyadic steps,
    steps toward the origin, and seeded random point pairs."""
    rng = np.random.default_rng(seed)
    nodes = grid.nodes()
    if nodes.shape[0] > 128:
        idx = np.linspace(0, nodes.shape[0] - 1, 128).astype(int)
        nodes = nodes[idx]
    pairs = []
    for x in nodes:
        pairs.append((x, -x))  # reach the origin, where power-law symbols peak
        for j in range(-h_depth, 3):
            for axis in range(grid.n):
                h = np.zeros(grid.n)
                h[axis] = 2.0 ** j
                pairs.append((x, h))
                pairs.append((x, -h))
    lo, hi = grid.r_lo, grid.r_hi
    xs = rng.uniform(-hi, hi, size=(random_pairs, grid.n))
    ys = rng.uniform(-hi, hi, size=(random_pairs, grid.n))
    keep = (np.linalg.norm(xs, axis=1) >= lo) & (np.linalg.norm(ys, axis=1) >= lo)
    for x, y in zip(xs[keep], ys[keep]):
        pairs.append((x, y - x))
    return pairs
