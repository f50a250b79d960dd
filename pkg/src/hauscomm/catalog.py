"""Named closed-form presets: kernels, matrix fields, symbols, test functions.

Preset names form a tiny grammar, e.g. ``annulus(1,2)``,
``power(0.5, annulus(1,4))``, ``dilation(3)``, ``power-beta(0.5)``. Every
preset carries exact support/norm metadata so downstream modules can split
quadrature panels at the right radii and tests can compare against closed
forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from . import linalg
from .errors import CatalogMissError, InvalidInputError

__all__ = [
    "KernelSpec",
    "MatrixField",
    "ScalarField",
    "preset_kernel",
    "preset_matrix_field",
    "preset_symbol",
    "preset_testfn",
    "dilate",
    "scale",
    "product",
    "linear_combination",
]


@dataclass(frozen=True)
class ScalarField:
    """Real-valued function on R^n, vectorized over point arrays.

    evaluate maps an (N, n) array to an (N,) array. ``breakpoints`` are radii
    of possible jump discontinuities; ``tags`` carry smoothness/decay metadata
    and analytic norm values where closed forms exist.
    """

    name: str
    evaluate: Callable[[np.ndarray], np.ndarray]
    breakpoints: tuple = ()
    tags: dict = field(default_factory=dict)

    def __call__(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return float(self.evaluate(x[None, :])[0])


@dataclass(frozen=True)
class KernelSpec:
    """Kernel with exact radial support [r_lo, r_hi] and interior jump radii."""

    name: str
    evaluate: Callable[[np.ndarray], np.ndarray]
    r_lo: float
    r_hi: float
    breakpoints: tuple = ()
    integrability: str = "bounded"
    # Every preset kernel is a function of |y| alone; custom kernels that are
    # not must clear this so batch evaluators keep the angular quadrature.
    radial: bool = True

    def __call__(self, y):
        y = np.atleast_1d(np.asarray(y, dtype=float))
        return float(self.evaluate(y[None, :])[0])


@dataclass(frozen=True)
class MatrixField:
    """The map y -> A(y) plus vectorized norm/determinant metadata.

    matrix(y) returns the n x n matrix at a single point. The *_at callables
    evaluate ||A(y)||, ||A^{-1}(y)|| and |det A^{-1}(y)| on an (N, n) array of
    points; they are the closed-form metadata the constants module integrates.
    apply_to(x, ys) maps A(y_i) x for a single x (n,) -> (N, n), or for a batch
    xs (M, n) -> (N, M, n). image_radius, when set, gives |A(y) x| as a
    function of (r, |x|) for fields whose action depends on |y| only.
    direction_free marks fields with A(y) = A(|y| e_1), which lets batch
    evaluators collapse the angular quadrature over y.
    """

    name: str
    matrix: Callable[[np.ndarray], np.ndarray]
    apply_to: Callable[[np.ndarray, np.ndarray], np.ndarray]
    op_norm_at: Callable[[np.ndarray], np.ndarray]
    inv_norm_at: Callable[[np.ndarray], np.ndarray]
    absdet_inv_at: Callable[[np.ndarray], np.ndarray]
    image_radius: Optional[Callable[[np.ndarray, float], np.ndarray]] = None
    preimage_radii: Optional[Callable[[float, float], tuple]] = None
    direction_free: bool = False


def _radii(pts):
    pts = np.asarray(pts, dtype=float)
    flat = pts.reshape(-1, pts.shape[-1])
    return np.sqrt(np.einsum("ij,ij->i", flat, flat)).reshape(pts.shape[:-1])


# ---------------------------------------------------------------------------
# preset-name grammar: name | name(arg, ...), args are numbers or nested calls


def _split_args(body):
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if cur or parts:
        parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def _parse(name):
    name = name.strip()
    if "(" not in name:
        return name, []
    if not name.endswith(")"):
        raise CatalogMissError(f"malformed preset name {name!r}")
    head, body = name.split("(", 1)
    return head.strip(), _split_args(body[:-1])


def _num(token, what):
    try:
        return float(token)
    except ValueError:
        raise CatalogMissError(f"expected a number for {what}, got {token!r}") from None


# ---------------------------------------------------------------------------
# kernels

_KERNEL_GRAMMAR = (
    "annulus(a,b)",
    "ball(r)",
    "halfline(a,b)",
    "power(gamma, <kernel>)",
    "bump(a,b)",
    "zero",
)


def preset_kernel(name) -> KernelSpec:
    head, args = _parse(name)
    if head == "annulus":
        if len(args) != 2:
            raise CatalogMissError("annulus takes (a, b)", valid=_KERNEL_GRAMMAR)
        a, b = _num(args[0], "a"), _num(args[1], "b")
        if not 0 <= a < b:
            raise InvalidInputError(f"annulus needs 0 <= a < b, got ({a}, {b})")

        def ev(pts, a=a, b=b):
            r = _radii(pts)
            return np.where((r >= a) & (r <= b), 1.0, 0.0)

        return KernelSpec(name=f"annulus({a:g},{b:g})", evaluate=ev, r_lo=a, r_hi=b)
    if head == "ball":
        if len(args) != 1:
            raise CatalogMissError("ball takes (r)", valid=_KERNEL_GRAMMAR)
        rad = _num(args[0], "r")
        if rad <= 0:
            raise InvalidInputError("ball radius must be positive")

        def ev(pts, rad=rad):
            return np.where(_radii(pts) <= rad, 1.0, 0.0)

        return KernelSpec(name=f"ball({rad:g})", evaluate=ev, r_lo=0.0, r_hi=rad)
    if head == "halfline":
        if len(args) != 2:
            raise CatalogMissError("halfline takes (a, b)", valid=_KERNEL_GRAMMAR)
        a, b = _num(args[0], "a"), _num(args[1], "b")
        if not 0 <= a < b:
            raise InvalidInputError(f"halfline needs 0 <= a < b, got ({a}, {b})")

        def ev(pts, a=a, b=b):
            pts = np.asarray(pts, dtype=float)
            if pts.shape[-1] != 1:
                raise InvalidInputError("halfline kernels are one-dimensional")
            y = pts[..., 0]
            return np.where((y > a) & (y < b), 1.0, 0.0)

        return KernelSpec(name=f"halfline({a:g},{b:g})", evaluate=ev, r_lo=a, r_hi=b,
                          radial=False)
    if head == "power":
        if len(args) != 2:
            raise CatalogMissError("power takes (gamma, kernel)", valid=_KERNEL_GRAMMAR)
        gamma = _num(args[0], "gamma")
        base = preset_kernel(args[1])

        def ev(pts, gamma=gamma, base=base):
            r = _radii(pts)
            with np.errstate(divide="ignore"):
                w = np.where(r > 0, r, 1.0) ** (-gamma)
            return np.where(r > 0, w, 0.0) * base.evaluate(pts)

        return KernelSpec(
            name=f"power({gamma:g},{base.name})",
            evaluate=ev,
            r_lo=base.r_lo,
            r_hi=base.r_hi,
            breakpoints=base.breakpoints,
            integrability="power-law",
            radial=base.radial,
        )
    if head == "bump":
        if len(args) != 2:
            raise CatalogMissError("bump takes (a, b)", valid=_KERNEL_GRAMMAR)
        a, b = _num(args[0], "a"), _num(args[1], "b")
        if not 0 <= a < b:
            raise InvalidInputError(f"bump needs 0 <= a < b, got ({a}, {b})")

        def ev(pts, a=a, b=b):
            r = _radii(pts)
            t = (2.0 * r - a - b) / (b - a)
            inside = np.abs(t) < 1.0
            out = np.zeros_like(r)
            ti = t[inside]
            out[inside] = np.exp(-1.0 / (1.0 - ti ** 2))
            return out

        return KernelSpec(name=f"bump({a:g},{b:g})", evaluate=ev, r_lo=a, r_hi=b,
                          integrability="smooth")
    if head == "zero":
        def ev(pts):
            return np.zeros(np.asarray(pts).shape[0])

        return KernelSpec(name="zero", evaluate=ev, r_lo=1.0, r_hi=2.0)
    raise CatalogMissError(f"unknown kernel preset {name!r}", valid=_KERNEL_GRAMMAR)


# ---------------------------------------------------------------------------
# matrix fields

_FIELD_GRAMMAR = ("radial", "dilation(c)", "shear(s)", "rotation-scale(c,theta)")


def _constant_field(name, A):
    A = np.asarray(A, dtype=float)
    norm_a = linalg.op_norm(A)
    Ainv = linalg.inverse(A)
    norm_ainv = linalg.op_norm(Ainv)
    absdet_inv = abs(linalg.det(Ainv))

    def matrix(y, A=A):
        return A

    def apply_to(x, ys, A=A):
        x = np.asarray(x, dtype=float)
        img = x @ A.T
        shape = (np.asarray(ys).shape[0],) + img.shape
        return np.broadcast_to(img, shape)

    def const(val):
        def f(ys, val=val):
            return np.full(np.asarray(ys).shape[0], val)

        return f

    return MatrixField(
        name=name,
        matrix=matrix,
        apply_to=apply_to,
        op_norm_at=const(norm_a),
        inv_norm_at=const(norm_ainv),
        absdet_inv_at=const(absdet_inv),
        image_radius=None,
        direction_free=True,
    )


def preset_matrix_field(name) -> MatrixField:
    head, args = _parse(name)
    if head == "radial":
        # A(y) = I / |y|: the reduction of the matrix operator to the radial one.
        def matrix(y):
            y = np.asarray(y, dtype=float)
            r = float(np.linalg.norm(y))
            if r == 0:
                raise InvalidInputError("radial field undefined at the origin")
            return np.eye(y.size) / r

        def apply_to(x, ys):
            x = np.asarray(x, dtype=float)
            r = _radii(ys)
            if x.ndim == 1:
                return x[None, :] / r[:, None]
            return x[None, :, :] / r[:, None, None]

        def op_norm_at(ys):
            return 1.0 / _radii(ys)

        def inv_norm_at(ys):
            return _radii(ys)

        def absdet_inv_at(ys):
            ys = np.asarray(ys, dtype=float)
            return _radii(ys) ** ys.shape[-1]

        return MatrixField(
            name="radial",
            matrix=matrix,
            apply_to=apply_to,
            op_norm_at=op_norm_at,
            inv_norm_at=inv_norm_at,
            absdet_inv_at=absdet_inv_at,
            image_radius=lambda r, xnorm: xnorm / np.asarray(r, dtype=float),
            preimage_radii=lambda rho, xnorm: (xnorm / rho,) if rho > 0 else (),
            direction_free=True,
        )
    if head == "dilation":
        if len(args) != 1:
            raise CatalogMissError("dilation takes (c)", valid=_FIELD_GRAMMAR)
        c = _num(args[0], "c")
        if c == 0:
            raise InvalidInputError("dilation factor must be nonzero")

        def matrix(y, c=c):
            return c * np.eye(np.asarray(y).size)

        def apply_to(x, ys, c=c):
            x = np.asarray(x, dtype=float)
            img = c * x
            shape = (np.asarray(ys).shape[0],) + img.shape
            return np.broadcast_to(img, shape)

        def const(val):
            def f(ys, val=val):
                return np.full(np.asarray(ys).shape[0], val)

            return f

        def absdet_inv_at(ys, c=c):
            ys = np.asarray(ys, dtype=float)
            return np.full(ys.shape[0], abs(c) ** (-ys.shape[-1]))

        return MatrixField(
            name=f"dilation({c:g})",
            matrix=matrix,
            apply_to=apply_to,
            op_norm_at=const(abs(c)),
            inv_norm_at=const(1.0 / abs(c)),
            absdet_inv_at=absdet_inv_at,
            image_radius=lambda r, xnorm, c=c: np.full(np.asarray(r).shape, abs(c) * xnorm),
            direction_free=True,
        )
    if head == "shear":
        if len(args) != 1:
            raise CatalogMissError("shear takes (s)", valid=_FIELD_GRAMMAR)
        s = _num(args[0], "s")
        return _constant_field(f"shear({s:g})", [[1.0, s], [0.0, 1.0]])
    if head == "rotation-scale":
        if len(args) != 2:
            raise CatalogMissError("rotation-scale takes (c, theta)", valid=_FIELD_GRAMMAR)
        c, th = _num(args[0], "c"), _num(args[1], "theta")
        if c == 0:
            raise InvalidInputError("rotation-scale factor must be nonzero")
        R = c * np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
        return _constant_field(f"rotation-scale({c:g},{th:g})", R)
    raise CatalogMissError(f"unknown matrix-field preset {name!r}", valid=_FIELD_GRAMMAR)


# ---------------------------------------------------------------------------
# symbols and test functions

_SYMBOL_GRAMMAR = ("power-beta(beta)", "halfspace", "log-bump", "constant(c)")
_TESTFN_GRAMMAR = (
    "shell-indicator(k)",
    "ball-indicator(r)",
    "power-decay(sigma[, eps])",
    "bump",
    "one",
)


def preset_symbol(name) -> ScalarField:
    head, args = _parse(name)
    if head == "power-beta":
        if len(args) != 1:
            raise CatalogMissError("power-beta takes (beta)", valid=_SYMBOL_GRAMMAR)
        beta = _num(args[0], "beta")
        if not 0 < beta < 1:
            raise InvalidInputError(f"power-beta needs beta in (0, 1), got {beta}")

        def ev(pts, beta=beta):
            return _radii(pts) ** beta

        return ScalarField(
            name=f"power-beta({beta:g})",
            evaluate=ev,
            tags={"lipschitz_beta": beta, "lipschitz_norm": 1.0, "smooth": False},
        )
    if head == "halfspace":
        def ev(pts):
            return np.where(np.asarray(pts, dtype=float)[..., 0] > 0, 1.0, 0.0)

        return ScalarField(
            name="halfspace",
            evaluate=ev,
            tags={"cmo_norm": 0.5, "bounded": True},
        )
    if head == "log-bump":
        # log|x| is the standard unbounded central-BMO symbol.
        def ev(pts):
            r = _radii(pts)
            with np.errstate(divide="ignore"):
                return np.where(r > 0, np.log(np.where(r > 0, r, 1.0)), 0.0)

        return ScalarField(name="log-bump", evaluate=ev, tags={"cmo_member": True})
    if head == "constant":
        if len(args) != 1:
            raise CatalogMissError("constant takes (c)", valid=_SYMBOL_GRAMMAR)
        c = _num(args[0], "c")

        def ev(pts, c=c):
            return np.full(np.asarray(pts).shape[0], c)

        return ScalarField(
            name=f"constant({c:g})",
            evaluate=ev,
            tags={"lipschitz_norm": 0.0, "cmo_norm": 0.0, "bounded": True},
        )
    raise CatalogMissError(f"unknown symbol preset {name!r}", valid=_SYMBOL_GRAMMAR)


def preset_testfn(name) -> ScalarField:
    head, args = _parse(name)
    if head == "shell-indicator":
        if len(args) != 1:
            raise CatalogMissError("shell-indicator takes (k)", valid=_TESTFN_GRAMMAR)
        k = int(_num(args[0], "k"))
        lo, hi = 2.0 ** (k - 1), 2.0 ** k

        def ev(pts, lo=lo, hi=hi):
            r = _radii(pts)
            return np.where((r >= lo) & (r < hi), 1.0, 0.0)

        return ScalarField(
            name=f"shell-indicator({k})",
            evaluate=ev,
            breakpoints=(lo, hi),
            tags={"bounded": True, "compact_support": True, "support_radius": hi},
        )
    if head == "ball-indicator":
        if len(args) != 1:
            raise CatalogMissError("ball-indicator takes (r)", valid=_TESTFN_GRAMMAR)
        rad = _num(args[0], "r")
        if rad <= 0:
            raise InvalidInputError("ball-indicator radius must be positive")

        def ev(pts, rad=rad):
            return np.where(_radii(pts) <= rad, 1.0, 0.0)

        return ScalarField(
            name=f"ball-indicator({rad:g})",
            evaluate=ev,
            breakpoints=(rad,),
            tags={"bounded": True, "compact_support": True, "support_radius": rad},
        )
    if head == "power-decay":
        if len(args) not in (1, 2):
            raise CatalogMissError("power-decay takes (sigma[, eps])", valid=_TESTFN_GRAMMAR)
        sigma = _num(args[0], "sigma")
        eps = _num(args[1], "eps") if len(args) == 2 else 2.0 ** -9
        if eps <= 0:
            raise InvalidInputError("power-decay truncation must be positive")

        def ev(pts, sigma=sigma, eps=eps):
            r = _radii(pts)
            return np.where(r >= eps, np.where(r > 0, r, 1.0) ** (-sigma), 0.0)

        return ScalarField(
            name=f"power-decay({sigma:g})",
            evaluate=ev,
            breakpoints=(eps,),
            tags={"power_law": sigma, "truncation": eps},
        )
    if head == "bump":
        def ev(pts):
            return np.exp(-_radii(pts) ** 2)

        return ScalarField(name="bump", evaluate=ev, tags={"smooth": True, "bounded": True})
    if head == "one":
        def ev(pts):
            return np.ones(np.asarray(pts).shape[0])

        return ScalarField(name="one", evaluate=ev, tags={"bounded": True})
    raise CatalogMissError(f"unknown test-function preset {name!r}", valid=_TESTFN_GRAMMAR)


# ---------------------------------------------------------------------------
# field algebra used by the operator and the harness


def dilate(f: ScalarField, c: float) -> ScalarField:
    """x -> f(c x). Breakpoint radii shrink by the factor c."""
    if c <= 0:
        raise InvalidInputError("dilation factor must be positive")

    def ev(pts, f=f, c=c):
        return f.evaluate(c * np.asarray(pts, dtype=float))

    return replace(f, name=f"dilate({c:g},{f.name})", evaluate=ev,
                   breakpoints=tuple(b / c for b in f.breakpoints))


def scale(f: ScalarField, c: float) -> ScalarField:
    """x -> c * f(x)."""

    def ev(pts, f=f, c=c):
        return c * f.evaluate(pts)

    tags = dict(f.tags)
    for key in ("lipschitz_norm", "cmo_norm"):
        if key in tags:
            tags[key] = abs(c) * tags[key]
    return replace(f, name=f"scale({c:g},{f.name})", evaluate=ev, tags=tags)


def product(b: ScalarField, f: ScalarField) -> ScalarField:
    def ev(pts, b=b, f=f):
        return b.evaluate(pts) * f.evaluate(pts)

    return ScalarField(
        name=f"product({b.name},{f.name})",
        evaluate=ev,
        breakpoints=tuple(sorted(set(b.breakpoints) | set(f.breakpoints))),
    )


def linear_combination(coeffs, fields) -> ScalarField:
    coeffs = [float(c) for c in coeffs]
    if len(coeffs) != len(fields) or not fields:
        raise InvalidInputError("need matching nonempty coefficient/field lists")

    def ev(pts, coeffs=coeffs, fields=fields):
        acc = coeffs[0] * fields[0].evaluate(pts)
        for c, f in zip(coeffs[1:], fields[1:]):
            acc = acc + c * f.evaluate(pts)
        return acc

    bps = sorted({b for f in fields for b in f.breakpoints})
    name = "+".join(f"{c:g}*{f.name}" for c, f in zip(coeffs, fields))
    return ScalarField(name=name, evaluate=ev, breakpoints=tuple(bps))
