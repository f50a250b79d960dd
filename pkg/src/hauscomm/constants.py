"""Theorem constants K1..K7: kernel-and-field integrals that quantify each
boundedness estimate, together with the condition-number growth functions
and the pointwise integrand weights.

Each constant is a quadrature over the kernel support of a product of
|Phi(y)| |y|^{-n}, powers of |det A^{-1}(y)|, the factor (1 + ||A(y)||^beta),
and (for the shell-space constants) a piecewise growth factor in the norms
of A(y) and its inverse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg, quadrature
from .catalog import KernelSpec, MatrixField
from .errors import ConstraintError, InvalidInputError

__all__ = [
    "ConstantSpec",
    "g_alpha_lambda",
    "g_tilde_alpha",
    "k_constant",
    "phi_weight",
    "varphi_weight",
    "hypothesis_violations",
    "KINDS",
]

KINDS = ("K1", "K2", "K3", "K4", "K5", "K6", "K7")

# A constant whose quadrature error estimate exceeds this fraction of its
# value after max refinement is flagged divergence-suspect.
DIVERGENCE_FRACTION = 0.1


def g_alpha_lambda(A: linalg.Matrix, alpha, lam) -> float:
    """Piecewise shell-growth factor: log of the condition number at
    alpha = lam, a power of ||A^{-1}|| above, a power of ||A|| below."""
    norm_a = linalg.op_norm(A)
    norm_ainv = linalg.op_norm(linalg.inverse(A))
    if alpha == lam:
        return 1.0 + math.log2(norm_a * norm_ainv)
    if alpha > lam:
        return norm_ainv ** (alpha - lam)
    return norm_a ** (lam - alpha)


def g_tilde_alpha(A: linalg.Matrix, alpha) -> float:
    """The lam = 0 specialization of g_alpha_lambda."""
    return g_alpha_lambda(A, alpha, 0.0)


def _g_factor_vec(norm_a, norm_ainv, alpha, lam):
    if alpha == lam:
        return 1.0 + np.log2(norm_a * norm_ainv)
    if alpha > lam:
        return norm_ainv ** (alpha - lam)
    return norm_a ** (lam - alpha)


def _log_factor_vec(norm_a):
    """log(2/||A||) below norm 1, log(2 ||A||) at or above; continuous at 1."""
    return np.where(norm_a < 1.0, np.log(2.0 / norm_a), np.log(2.0 * norm_a))


def phi_weight(y, fld: MatrixField, beta, n, kernel: KernelSpec = None) -> float:
    """Pointwise weight |Phi| |y|^{-n} max{1, |det A^{-1}|^(beta/n)} (1 + ||A||^beta)."""
    y = np.atleast_1d(np.asarray(y, dtype=float))[None, :]
    r = float(np.linalg.norm(y))
    det_inv = float(fld.absdet_inv_at(y)[0])
    norm_a = float(fld.op_norm_at(y)[0])
    phi = kernel.evaluate(y)[0] if kernel is not None else 1.0
    return abs(phi) / r ** n * max(1.0, det_inv ** (beta / n)) * (1.0 + norm_a ** beta)


def varphi_weight(y, fld: MatrixField, q1, n, kernel: KernelSpec = None) -> float:
    """Pointwise weight |Phi| |y|^{-n} |det A^{-1}|^(1/q1) * logarithmic factor."""
    y = np.atleast_1d(np.asarray(y, dtype=float))[None, :]
    r = float(np.linalg.norm(y))
    det_inv = float(fld.absdet_inv_at(y)[0])
    norm_a = float(fld.op_norm_at(y)[0])
    phi = kernel.evaluate(y)[0] if kernel is not None else 1.0
    return abs(phi) / r ** n * det_inv ** (1.0 / q1) * float(_log_factor_vec(np.array([norm_a]))[0])


# ---------------------------------------------------------------------------
# hypothesis checks (shared with the scenario harness)


def _require(exps, *names):
    missing = [nm for nm in names if exps.get(nm) is None]
    if missing:
        raise InvalidInputError(f"missing exponents: {', '.join(missing)}")


def hypothesis_violations(kind, exps, n) -> list:
    """Violated hypothesis inequalities for the theorem owning the constant.

    Returns human-readable strings, empty when all hypotheses hold.
    """
    v = []
    tol = 1e-9

    def need(cond, text):
        if not cond:
            v.append(text)

    if kind == "K1":
        _require(exps, "beta", "p", "q", "lam")
        beta, p, q, lam = exps["beta"], exps["p"], exps["q"], exps["lam"]
        need(0 < beta < 1, "0 < beta < 1")
        need(1 < p < n / beta, "1 < p < n/beta")
        need(0 < lam < n - beta * p, "0 < lam < n - beta*p")
        need(abs(1.0 / q - (1.0 / p - beta / (n - lam))) < tol, "1/q = 1/p - beta/(n - lam)")
    elif kind == "K2":
        _require(exps, "beta", "p", "q")
        beta, p, q = exps["beta"], exps["p"], exps["q"]
        need(0 < beta < 1, "0 < beta < 1")
        need(1 < p < n / beta, "1 < p < n/beta")
        need(abs(1.0 / q - (1.0 / p - beta / n)) < tol, "1/q = 1/p - beta/n")
    elif kind in ("K3", "K4"):
        _require(exps, "beta", "p1", "p2", "q1", "q2", "alpha")
        beta, p1, p2 = exps["beta"], exps["p1"], exps["p2"]
        q1, q2, alpha = exps["q1"], exps["q2"], exps["alpha"]
        need(0 < p1, "0 < p1")
        need(p1 <= p2, "p1 <= p2")
        need(0 < beta < 1, "0 < beta < 1")
        need(1 < q1 < n / beta, "1 < q1 < n/beta")
        need(abs(1.0 / q1 - 1.0 / q2 - beta / n) < tol, "1/q1 - 1/q2 = beta/n")
        if kind == "K3":
            _require(exps, "lam")
            lam = exps["lam"]
            need(lam > 0, "lam > 0")
            need(-n / q1 + beta + lam < alpha < n * (1 - 1.0 / q1) + lam,
                 "-n/q1 + beta + lam < alpha < n(1 - 1/q1) + lam")
        else:
            need(-n / q1 + beta < alpha < n * (1 - 1.0 / q1),
                 "-n/q1 + beta < alpha < n(1 - 1/q1)")
    elif kind == "K5":
        _require(exps, "beta", "p")
        beta, p = exps["beta"], exps["p"]
        need(0 < beta < 1, "0 < beta < 1")
        need(1 < p < np.inf, "1 < p < inf")
    elif kind in ("K6", "K7"):
        _require(exps, "p", "q", "q1", "q2", "alpha1", "alpha2")
        p, q, q1, q2 = exps["p"], exps["q"], exps["q1"], exps["q2"]
        a1, a2 = exps["alpha1"], exps["alpha2"]
        need(1 < p < np.inf, "1 < p < inf")
        need(1 < q1 < np.inf, "1 < q1 < inf")
        need(1 < q2 < np.inf, "1 < q2 < inf")
        need(abs(1.0 / q2 - (1.0 / q + 1.0 / q1)) < tol, "1/q2 = 1/q + 1/q1")
        need(abs(a1 - (n / q + a2)) < tol, "alpha1 = n/q + alpha2")
        if kind == "K6":
            _require(exps, "lam")
            need(exps["lam"] > 0, "lam > 0")
    else:
        raise InvalidInputError(f"unknown constant kind {kind!r}; expected one of {KINDS}")
    return v


@dataclass(frozen=True)
class ConstantSpec:
    kind: str
    kernel: KernelSpec
    field: MatrixField
    n: int
    exponents: dict = field(default_factory=dict)

    def __post_init__(self):
        violations = hypothesis_violations(self.kind, self.exponents, self.n)
        if violations:
            raise ConstraintError(
                f"{self.kind} requires " + "; ".join(violations)
            )


@dataclass(frozen=True)
class ConstantResult:
    value: float
    error_estimate: float
    divergence_suspect: bool


def _integrand_factory(spec: ConstantSpec):
    kind, exps, n = spec.kind, spec.exponents, spec.n
    kernel, fld = spec.kernel, spec.field

    def base(ys):
        phi = np.abs(kernel.evaluate(ys))
        r = np.sqrt(np.sum(ys ** 2, axis=-1))
        return phi / r ** n

    if kind == "K1":
        beta, q, lam = exps["beta"], exps["q"], exps["lam"]

        def g(ys):
            d = fld.absdet_inv_at(ys)
            na = fld.op_norm_at(ys)
            expo = np.maximum(d ** (1.0 / q - lam / q), d ** (beta / n + 1.0 / q - lam / q))
            return base(ys) * expo * (1.0 + na ** beta)

        return g
    if kind == "K2":
        beta, p, q = exps["beta"], exps["p"], exps["q"]

        def g(ys):
            d = fld.absdet_inv_at(ys)
            na = fld.op_norm_at(ys)
            return base(ys) * np.maximum(d ** (1.0 / q), d ** (1.0 / p)) * (1.0 + na ** beta)

        return g
    if kind in ("K3", "K4"):
        beta, q1, q2, alpha = exps["beta"], exps["q1"], exps["q2"], exps["alpha"]
        lam = exps["lam"] if kind == "K3" else 0.0

        def g(ys):
            d = fld.absdet_inv_at(ys)
            na = fld.op_norm_at(ys)
            nai = fld.inv_norm_at(ys)
            growth = _g_factor_vec(na, nai, alpha, lam)
            return (base(ys) * np.maximum(d ** (1.0 / q2), d ** (1.0 / q1))
                    * (1.0 + na ** beta) * growth)

        return g
    if kind == "K5":
        beta, p = exps["beta"], exps["p"]

        def g(ys):
            d = fld.absdet_inv_at(ys)
            na = fld.op_norm_at(ys)
            expo = np.maximum(d ** (-1.0 / p), d ** (1.0 + beta / n - 1.0 / p))
            return base(ys) * expo * (1.0 + na ** beta)

        return g
    # K6 / K7
    q1, alpha1 = exps["q1"], exps["alpha1"]
    lam = exps["lam"] if kind == "K6" else 0.0

    def g(ys):
        d = fld.absdet_inv_at(ys)
        na = fld.op_norm_at(ys)
        nai = fld.inv_norm_at(ys)
        growth = _g_factor_vec(na, nai, alpha1, lam)
        return base(ys) * d ** (1.0 / q1) * growth * _log_factor_vec(na)

    return g


def k_constant(spec: ConstantSpec, tol=1e-8) -> ConstantResult:
    """Quadrature value of the constant's defining integral over supp Phi."""
    g = _integrand_factory(spec)
    r_lo = max(spec.kernel.r_lo, 1e-12)
    res = quadrature.integrate_annulus(g, spec.n, r_lo, spec.kernel.r_hi, tol=tol,
                                       breakpoints=spec.kernel.breakpoints)
    suspect = (not math.isfinite(res.value)) or (
        abs(res.value) > 0 and res.error_estimate > DIVERGENCE_FRACTION * abs(res.value)
    )
    return ConstantResult(value=res.value, error_estimate=res.error_estimate,
                          divergence_suspect=suspect)
