"""Dense matrix arithmetic for n in {1, 2, 3}: operator norm, inverse,
determinant, and the determinant/norm inequality chain.

Everything is closed-form except the 3x3 operator norm, which runs a cyclic
Jacobi iteration on B^T B; no LAPACK dependence keeps results deterministic
across platforms.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidInputError, SingularMatrixError

__all__ = ["Matrix", "op_norm", "inverse", "det", "check_det_bounds"]

# Scale-aware singularity guard: |det B| must exceed DET_EPS_FACTOR * max|entry|^n.
DET_EPS_FACTOR = 1e-12


def _as_matrix(B) -> np.ndarray:
    B = np.asarray(B, dtype=float)
    if B.ndim == 0:
        B = B.reshape(1, 1)
    if B.ndim != 2 or B.shape[0] != B.shape[1] or not 1 <= B.shape[0] <= 3:
        raise InvalidInputError(f"expected an n x n matrix with 1 <= n <= 3, got shape {B.shape}")
    if not np.all(np.isfinite(B)):
        raise InvalidInputError("matrix has non-finite entries")
    return B


# "Matrix" is a plain 2-D ndarray; this alias names the contract.
Matrix = np.ndarray


def det(B: Matrix) -> float:
    B = _as_matrix(B)
    n = B.shape[0]
    if n == 1:
        return float(B[0, 0])
    if n == 2:
        return float(B[0, 0] * B[1, 1] - B[0, 1] * B[1, 0])
    return float(
        B[0, 0] * (B[1, 1] * B[2, 2] - B[1, 2] * B[2, 1])
        - B[0, 1] * (B[1, 0] * B[2, 2] - B[1, 2] * B[2, 0])
        + B[0, 2] * (B[1, 0] * B[2, 1] - B[1, 1] * B[2, 0])
    )


def _det_eps(B: np.ndarray) -> float:
    scale = float(np.max(np.abs(B)))
    return DET_EPS_FACTOR * scale ** B.shape[0]


def op_norm(B: Matrix) -> float:
    """Largest singular value, i.e. sup |Bx|/|x| over nonzero x."""
    B = _as_matrix(B)
    n = B.shape[0]
    if n == 1:
        return abs(float(B[0, 0]))
    if n == 2:
        # Singular values of a 2x2 from the invariants of B^T B.
        a, b, c, d = B.ravel()
        t = a * a + b * b + c * c + d * d
        dd = a * d - b * c
        disc = max(t * t - 4.0 * dd * dd, 0.0)
        return math.sqrt(0.5 * (t + math.sqrt(disc)))
    return math.sqrt(_jacobi_max_eig(B.T @ B))


def _jacobi_max_eig(S: np.ndarray, sweeps: int = 30, tol: float = 1e-14) -> float:
    """Largest eigenvalue of a symmetric 3x3 by cyclic Jacobi rotations."""
    S = S.copy()
    for _ in range(sweeps):
        off = abs(S[0, 1]) + abs(S[0, 2]) + abs(S[1, 2])
        if off <= tol * max(1.0, abs(S[0, 0]) + abs(S[1, 1]) + abs(S[2, 2])):
            break
        for p, q in ((0, 1), (0, 2), (1, 2)):
            if S[p, q] == 0.0:
                continue
            theta = 0.5 * math.atan2(2.0 * S[p, q], S[q, q] - S[p, p])
            c, s = math.cos(theta), math.sin(theta)
            J = np.eye(3)
            J[p, p] = J[q, q] = c
            J[p, q] = s
            J[q, p] = -s
            S = J.T @ S @ J
    return float(max(S[0, 0], S[1, 1], S[2, 2]))


def inverse(B: Matrix) -> Matrix:
    """Closed-form inverse; raises SingularMatrixError near |det| = 0."""
    B = _as_matrix(B)
    n = B.shape[0]
    d = det(B)
    if abs(d) <= _det_eps(B):
        raise SingularMatrixError(f"matrix is numerically singular (|det| = {abs(d):.3e})", det=d)
    if n == 1:
        return np.array([[1.0 / B[0, 0]]])
    if n == 2:
        a, b, c, dd = B.ravel()
        return np.array([[dd, -b], [-c, a]]) / d
    cof = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            minor = np.delete(np.delete(B, i, axis=0), j, axis=1)
            cof[i, j] = (-1.0) ** (i + j) * (minor[0, 0] * minor[1, 1] - minor[0, 1] * minor[1, 0])
    return cof.T / d


def check_det_bounds(B: Matrix):
    """The chain ||B||^{-n} <= |det(B^{-1})| <= ||B^{-1}||^{n}.

    Returns (lhs, mid, rhs, holds) with a 1e-10 relative slack on holds.
    """
    B = _as_matrix(B)
    n = B.shape[0]
    Binv = inverse(B)
    lhs = op_norm(B) ** (-n)
    mid = abs(det(Binv))
    rhs = op_norm(Binv) ** n
    slack = 1e-10
    holds = lhs <= mid * (1.0 + slack) and mid <= rhs * (1.0 + slack)
    return lhs, mid, rhs, holds
