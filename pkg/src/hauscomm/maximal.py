"""Fractional maximal functions and sharp mean oscillation over finite cube
families, plus the pointwise commutator bound they control.

The supremum over all cubes is approximated by the cube_family ladder from
the domain module (centered cube + lattice shifts per scale). Cube integrals
use a tensor-product midpoint rule. The *_many variants evaluate a whole
array of points in a handful of vectorized passes and are what the norm
estimators and the bound integrand call.
"""

from __future__ import annotations

import numpy as np

from . import quadrature
from .catalog import ScalarField
from .domain import Cube
from .errors import InvalidInputError

__all__ = [
    "frac_maximal",
    "frac_maximal_many",
    "sharp_oscillation",
    "sharp_oscillation_many",
    "lemma_lipschitz_bound",
    "default_scales",
]

DEFAULT_NODES_PER_AXIS = 64


def default_scales(depth=3):
    """Geometric cube-side ladder 2^j, j in {-depth, ..., depth}."""
    return [2.0 ** j for j in range(-depth, depth + 1)]


def _cube_average(f, cube: Cube, per_axis, absolute=True):
    vals = f.evaluate(cube.midpoint_nodes(per_axis))
    return float(np.mean(np.abs(vals) if absolute else vals))


def frac_maximal(beta, f: ScalarField, x, family, nodes_per_axis=DEFAULT_NODES_PER_AXIS):
    """max over the family of |Q|^(beta/n - 1) * integral_Q |f|.

    beta = 0 recovers the Hardy-Littlewood maximal function.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    family = list(family)
    if not family:
        raise InvalidInputError("cube family must be nonempty")
    if not 0 <= beta < x.size:
        raise InvalidInputError(f"need 0 <= beta < n, got beta = {beta}")
    best = -np.inf
    for cube in sorted(family, key=lambda c: (c.side, c.center)):
        if not cube.contains(x):
            raise InvalidInputError(f"cube {cube} does not contain the point {x}")
        avg = _cube_average(f, cube, nodes_per_axis, absolute=True)
        best = max(best, cube.side ** beta * avg)
    return best


def sharp_oscillation(f: ScalarField, beta, x, family, nodes_per_axis=DEFAULT_NODES_PER_AXIS):
    """max over the family of |Q|^(-1 - beta/n) * integral_Q |f - mean_Q f|."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    family = list(family)
    if not family:
        raise InvalidInputError("cube family must be nonempty")
    best = -np.inf
    for cube in sorted(family, key=lambda c: (c.side, c.center)):
        vals = f.evaluate(cube.midpoint_nodes(nodes_per_axis))
        mean = float(np.mean(vals))
        osc = float(np.mean(np.abs(vals - mean)))
        best = max(best, cube.side ** (-beta) * osc)
    return best


def _midpoint_offsets(n, per_axis):
    axis = -0.5 + (np.arange(per_axis) + 0.5) / per_axis
    grids = np.meshgrid(*([axis] * n), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=-1)  # in [-1/2, 1/2]^n


def _battery_max(f, zs, scales, nodes_per_axis, mode, expo):
    """Vectorized max over the cube battery at every point of zs (N, n).

    mode 'avg': side^expo * mean|f| per cube; mode 'osc': side^expo *
    mean|f - mean_f| per cube.
    """
    zs = np.asarray(zs, dtype=float)
    n = zs.shape[1]
    unit = _midpoint_offsets(n, nodes_per_axis)  # (m, n)
    best = np.full(zs.shape[0], -np.inf)

    def term(nodes, side):
        vals = f.evaluate(nodes.reshape(-1, n)).reshape(zs.shape[0], -1)
        if mode == "avg":
            acc = np.mean(np.abs(vals), axis=1)
        else:
            mean = np.mean(vals, axis=1)
            acc = np.mean(np.abs(vals - mean[:, None]), axis=1)
        return side ** expo * acc

    for s in scales:
        # Centered cube.
        nodes = zs[:, None, :] + s * unit[None, :, :]
        best = np.maximum(best, term(nodes, s))
        # Lattice cubes of side s whose closure contains the point.
        base = np.floor(zs / s)
        for shift in np.ndindex(*(3,) * n):
            corner = (base + np.asarray(shift) - 1) * s
            inside = np.all((corner <= zs) & (zs <= corner + s), axis=1)
            if not np.any(inside):
                continue
            centers = corner + 0.5 * s
            nodes = centers[:, None, :] + s * unit[None, :, :]
            t = term(nodes, s)
            best = np.where(inside, np.maximum(best, t), best)
    return best


def frac_maximal_many(beta, f: ScalarField, zs, scales=None,
                      nodes_per_axis=DEFAULT_NODES_PER_AXIS):
    zs = np.asarray(zs, dtype=float)
    if not 0 <= beta < zs.shape[1]:
        raise InvalidInputError(f"need 0 <= beta < n, got beta = {beta}")
    scales = default_scales() if scales is None else list(scales)
    return _battery_max(f, zs, scales, nodes_per_axis, "avg", beta)


def sharp_oscillation_many(f: ScalarField, beta, zs, scales=None,
                           nodes_per_axis=DEFAULT_NODES_PER_AXIS):
    zs = np.asarray(zs, dtype=float)
    scales = default_scales() if scales is None else list(scales)
    return _battery_max(f, zs, scales, nodes_per_axis, "osc", -beta)


def lemma_lipschitz_bound(b_lipnorm, beta, spec, f: ScalarField, x, tol=1e-6,
                          scales=None, nodes_per_axis=DEFAULT_NODES_PER_AXIS):
    """Right-hand side of the pointwise bound on M(commutator)(x):

    ||b|| * integral |Phi(y)| |y|^{-n} max{1, |det A^{-1}(y)|^(beta/n)}
    (1 + ||A(y)||^beta) M_beta(f)(A(y) x) dy.
    """
    if b_lipnorm == 0.0:
        return 0.0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    n = spec.n
    if not 0 < beta < 1:
        raise InvalidInputError(f"need 0 < beta < 1, got {beta}")
    scales = default_scales() if scales is None else list(scales)

    def integrand(ys):
        phi = np.abs(spec.kernel.evaluate(ys))
        r = np.sqrt(np.sum(ys ** 2, axis=-1))
        det_inv = spec.field.absdet_inv_at(ys)
        norm_a = spec.field.op_norm_at(ys)
        zs = spec.field.apply_to(x, ys)
        mb = frac_maximal_many(beta, f, zs, scales=scales, nodes_per_axis=nodes_per_axis)
        return (phi / r ** n * np.maximum(1.0, det_inv ** (beta / n))
                * (1.0 + norm_a ** beta) * mb)

    res = quadrature.integrate_annulus(integrand, n, spec.r_lo, spec.r_hi, tol=tol,
                                       breakpoints=spec.kernel.breakpoints)
    return b_lipnorm * res.value
