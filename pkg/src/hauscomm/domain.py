"""Dyadic shells, cube families, radial sampling grids, and the shell-cover
combinatorics that bound how a nonsingular matrix smears one shell across
neighbouring ones.

Conventions: shell C_k = {x : 2^(k-1) <= |x| < 2^k} (lower-closed, upper-open),
so every nonzero point belongs to exactly one shell.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import InvalidInputError, OriginExcludedError

__all__ = [
    "DyadicShell",
    "Cube",
    "RadialGrid",
    "ShellCover",
    "shell_index",
    "shell_cover",
    "cube_family",
    "image_shell_bounds",
]

# Widen the cover by one index on each side when a norm sits this close to an
# exact power of two: the strict dyadic bracketing has no integer solution there.
_POW2_SLOP = 1e-9


@dataclass(frozen=True)
class DyadicShell:
    """Shell index k for C_k = B_k \\ B_{k-1}."""

    k: int

    @property
    def r_lo(self) -> float:
        return 2.0 ** (self.k - 1)

    @property
    def r_hi(self) -> float:
        return 2.0 ** self.k

    def contains_radius(self, r: float) -> bool:
        return self.r_lo <= r < self.r_hi


@dataclass(frozen=True)
class Cube:
    """Axis-aligned cube given by its center and side length."""

    center: tuple
    side: float

    def __post_init__(self):
        if self.side <= 0:
            raise InvalidInputError(f"cube side must be positive, got {self.side}")

    @property
    def n(self) -> int:
        return len(self.center)

    @property
    def volume(self) -> float:
        return self.side ** self.n

    def contains(self, x) -> bool:
        c = np.asarray(self.center)
        x = np.asarray(x, dtype=float)
        h = 0.5 * self.side
        return bool(np.all(x >= c - h) and np.all(x <= c + h))

    def midpoint_nodes(self, per_axis: int) -> np.ndarray:
        """Tensor-product midpoint nodes, shape (per_axis**n, n)."""
        c = np.asarray(self.center, dtype=float)
        h = 0.5 * self.side
        axis = c[:, None] - h + self.side * (np.arange(per_axis) + 0.5) / per_axis
        grids = np.meshgrid(*axis, indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=-1)


@dataclass(frozen=True)
class ShellCover:
    """A(y) C_k lands inside the shells C_{k+j}, j in {l, ..., l+m+1}."""

    l: int
    m: int

    def __post_init__(self):
        if self.m < 0:
            raise InvalidInputError("cover breadth m must be nonnegative")

    @property
    def offsets(self) -> range:
        return range(self.l, self.l + self.m + 2)


@dataclass(frozen=True)
class RadialGrid:
    """Sampling carrier: shells k_min..k_max with per-shell radial/angular counts."""

    n: int
    k_min: int
    k_max: int
    radial_points_per_shell: int = 8
    angular_points: int = 16

    def __post_init__(self):
        if self.k_min > self.k_max:
            raise InvalidInputError("k_min must not exceed k_max")
        if self.radial_points_per_shell < 1 or self.angular_points < 1:
            raise InvalidInputError("point counts must be >= 1")
        if not 1 <= self.n <= 3:
            raise InvalidInputError("dimension must be 1, 2 or 3")

    @property
    def r_lo(self) -> float:
        return 2.0 ** (self.k_min - 1)

    @property
    def r_hi(self) -> float:
        return 2.0 ** self.k_max

    def shell_radii(self, k: int) -> np.ndarray:
        """Midpoint radii inside [2^(k-1), 2^k)."""
        lo, hi = 2.0 ** (k - 1), 2.0 ** k
        m = self.radial_points_per_shell
        return lo + (hi - lo) * (np.arange(m) + 0.5) / m

    def directions(self) -> np.ndarray:
        """Unit vectors, shape (q, n); deterministic per dimension."""
        if self.n == 1:
            return np.array([[1.0], [-1.0]])
        if self.n == 2:
            th = 2.0 * np.pi * np.arange(self.angular_points) / self.angular_points
            return np.stack([np.cos(th), np.sin(th)], axis=-1)
        mpol = max(2, self.angular_points // 4)
        maz = max(4, self.angular_points)
        mu = np.cos(np.pi * (np.arange(mpol) + 0.5) / mpol)
        ph = 2.0 * np.pi * np.arange(maz) / maz
        mu_g, ph_g = np.meshgrid(mu, ph, indexing="ij")
        s = np.sqrt(1.0 - mu_g ** 2)
        return np.stack([s * np.cos(ph_g), s * np.sin(ph_g), mu_g], axis=-1).reshape(-1, 3)

    def nodes(self) -> np.ndarray:
        """All sample points, shape (N, n)."""
        dirs = self.directions()
        radii = np.concatenate([self.shell_radii(k) for k in range(self.k_min, self.k_max + 1)])
        return (radii[:, None, None] * dirs[None, :, :]).reshape(-1, self.n)


def shell_index(x) -> int:
    """The unique k with 2^(k-1) <= |x| < 2^k."""
    x = np.asarray(x, dtype=float)
    r = float(np.linalg.norm(x))
    if r == 0.0:
        raise OriginExcludedError("dyadic shells exclude the origin")
    if not math.isfinite(r):
        raise InvalidInputError("point has non-finite coordinates")
    k = math.floor(math.log2(r)) + 1
    # Guard against log2 rounding at exact powers of two.
    while r < 2.0 ** (k - 1):
        k -= 1
    while r >= 2.0 ** k:
        k += 1
    return k


def _near_pow2(v: float) -> bool:
    lg = math.log2(v)
    return abs(lg - round(lg)) < _POW2_SLOP


def shell_cover(A: linalg.Matrix) -> ShellCover:
    """Offsets (l, m) with A C_k contained in the union of C_{k+l}..C_{k+l+m+1}.

    l = floor(log2 ||A^{-1}||^{-1}); m minimal with ||A|| < 2^(l+m+1). The cover
    widens by one index per side whenever either norm sits on a dyadic boundary.
    """
    norm_a = linalg.op_norm(A)
    norm_ainv = linalg.op_norm(linalg.inverse(A))
    lo = 1.0 / norm_ainv
    l = math.floor(math.log2(lo))
    m = max(0, math.ceil(math.log2(norm_a)) - l - 1)
    if _near_pow2(lo):
        l -= 1
        m += 1
    if _near_pow2(norm_a):
        m += 1
    return ShellCover(l=l, m=m)


def image_shell_bounds(A: linalg.Matrix, k: int):
    """Radial bracket of A C_k: (||A^{-1}||^{-1} 2^(k-1), ||A|| 2^k)."""
    norm_a = linalg.op_norm(A)
    norm_ainv = linalg.op_norm(linalg.inverse(A))
    return (2.0 ** (k - 1)) / norm_ainv, norm_a * 2.0 ** k


def cube_family(x, scales) -> list:
    """Finite surrogate for "all cubes containing x" at the given scales.

    Per scale s: the cube centered at x, plus every lattice cube of side s
    (corners on s Z^n) whose closure contains x.
    """
    x = np.asarray(x, dtype=float)
    scales = list(scales)
    if not scales:
        raise InvalidInputError("scales must be nonempty")
    n = x.size
    cubes = []
    for s in scales:
        if s <= 0:
            raise InvalidInputError(f"scales must be positive, got {s}")
        cubes.append(Cube(center=tuple(x), side=float(s)))
        base = np.floor(x / s)
        seen = set()
        for shift in np.ndindex(*(3,) * n):
            corner = (base + np.asarray(shift) - 1) * s
            if np.all(corner <= x) and np.all(x <= corner + s):
                key = tuple(np.round(corner / s).astype(int))
                if key not in seen:
                    seen.add(key)
                    cubes.append(Cube(center=tuple(corner + 0.5 * s), side=float(s)))
    return cubes
