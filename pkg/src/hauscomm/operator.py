"""Pointwise evaluation of the matrix-field Hausdorff operator and its
commutator with a symbol function.

Two evaluation paths are provided: adaptive quadrature for single points
(`hausdorff_apply`, `commutator_apply`) and a fixed composite rule over the
kernel support for batch evaluation (`commutator_field`), which the norm
estimators and the maximal function drive with thousands of points at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels, quadrature
from .catalog import KernelSpec, MatrixField, ScalarField, preset_matrix_field, product
from .errors import HauscommError, InvalidInputError, SingularMatrixError

__all__ = [
    "OperatorSpec",
    "hausdorff_apply",
    "hausdorff_radial",
    "commutator_apply",
    "commutator_field",
    "support_rule",
]

# Radial floor for kernels whose support reaches the origin; the |y|^{-n}
# weight makes a literal lower bound of 0 improper.
_R_FLOOR = 1e-12


@dataclass(frozen=True)
class OperatorSpec:
    kernel: KernelSpec
    field: MatrixField
    n: int

    def __post_init__(self):
        if not 1 <= self.n <= 3:
            raise InvalidInputError("dimension must be 1, 2 or 3")
        # Compatibility check: the field must be nonsingular on the kernel support.
        r_lo = max(self.kernel.r_lo, _R_FLOOR)
        radii = np.geomspace(r_lo, self.kernel.r_hi, 16)
        probe = np.zeros((radii.size, self.n))
        probe[:, 0] = radii
        dets = self.field.absdet_inv_at(probe)
        if not np.all(np.isfinite(dets)) or np.any(dets == 0):
            raise SingularMatrixError(
                f"field {self.field.name!r} is singular on the support of {self.kernel.name!r}"
            )

    @property
    def r_lo(self) -> float:
        return max(self.kernel.r_lo, _R_FLOOR)

    @property
    def r_hi(self) -> float:
        return self.kernel.r_hi


def _f_breakpoints(spec: OperatorSpec, f: ScalarField, x: np.ndarray):
    """Radii where y -> f(A(y)x) may jump, for fields that expose preimages."""
    if spec.field.preimage_radii is None or not f.breakpoints:
        return ()
    xnorm = float(np.linalg.norm(x))
    if xnorm == 0:
        return ()
    out = []
    for rho in f.breakpoints:
        out.extend(spec.field.preimage_radii(rho, xnorm))
    return tuple(out)


def hausdorff_apply(spec: OperatorSpec, f: ScalarField, x, tol=1e-8) -> float:
    """The operator value at x: integral of Phi(y) |y|^{-n} f(A(y) x) dy."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.size != spec.n:
        raise InvalidInputError(f"point has dimension {x.size}, operator has n = {spec.n}")

    def integrand(ys):
        phi = spec.kernel.evaluate(ys)
        r = np.sqrt(np.sum(ys ** 2, axis=-1))
        pts = spec.field.apply_to(x, ys)
        return phi / r ** spec.n * f.evaluate(pts)

    bps = tuple(spec.kernel.breakpoints) + _f_breakpoints(spec, f, x)
    res = quadrature.integrate_annulus(integrand, spec.n, spec.r_lo, spec.r_hi,
                                       tol=tol, breakpoints=bps)
    return res.value


def hausdorff_radial(kernel: KernelSpec, f: ScalarField, x, tol=1e-8, n=None) -> float:
    """The radial special case A(y) = I/|y|; consistent with hausdorff_apply."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    spec = OperatorSpec(kernel=kernel, field=preset_matrix_field("radial"),
                        n=n if n is not None else x.size)
    return hausdorff_apply(spec, f, x, tol=tol)


def commutator_apply(spec: OperatorSpec, b: ScalarField, f: ScalarField, x,
                     tol=1e-8, check=True) -> float:
    """Commutator value b(x) H f(x) - H(b f)(x) at a single point.

    Computed in the single-integral form; with check=True the difference form
    is evaluated too and the two must agree within a combined 1e-8 tolerance.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    bx = b(x)

    def integrand(ys):
        phi = spec.kernel.evaluate(ys)
        r = np.sqrt(np.sum(ys ** 2, axis=-1))
        pts = spec.field.apply_to(x, ys)
        return phi / r ** spec.n * (bx - b.evaluate(pts)) * f.evaluate(pts)

    bps = (tuple(spec.kernel.breakpoints) + _f_breakpoints(spec, f, x)
           + _f_breakpoints(spec, b, x))
    res = quadrature.integrate_annulus(integrand, spec.n, spec.r_lo, spec.r_hi,
                                       tol=tol, breakpoints=bps)
    value = res.value
    if check:
        diff_form = bx * hausdorff_apply(spec, f, x, tol=tol) \
            - hausdorff_apply(spec, product(b, f), x, tol=tol)
        budget = max(1e-8, 10.0 * tol) * max(1.0, abs(value))
        if abs(diff_form - value) > budget:
            raise HauscommError(
                "commutator forms disagree: "
                f"difference form {diff_form!r} vs single integral {value!r}"
            )
    return value


_SPHERE_AREA = {1: 2.0, 2: 2.0 * np.pi, 3: 4.0 * np.pi}


def support_rule(spec: OperatorSpec, radial_panels=32, angular_order=None,
                 collapse_angular=False):
    """Fixed composite Kronrod rule over the kernel support.

    Returns (ys, w) with sum_i w_i g(y_i) approximating the integral of g over
    supp Phi. Panels split at kernel breakpoints and grade geometrically
    toward the origin when the support reaches it. With collapse_angular the
    angular nodes are replaced by a single direction carrying the full sphere
    measure, which is exact only when g depends on |y| alone.
    """
    r_lo, r_hi = spec.r_lo, spec.r_hi
    cuts = sorted({float(c) for c in spec.kernel.breakpoints if r_lo < c < r_hi})
    segments = list(zip([r_lo, *cuts], [*cuts, r_hi]))
    edges = []
    for a, bnd in segments:
        if a <= 1e-6 * bnd:
            # Support reaches the origin: geometric grading keeps the |y|^{-n}
            # weight resolved.
            gpts = np.geomspace(max(a, _R_FLOOR), bnd, radial_panels + 1)
            edges.append(gpts)
        else:
            edges.append(np.linspace(a, bnd, radial_panels + 1))
    if collapse_angular:
        dirs = np.zeros((1, spec.n))
        dirs[0, 0] = 1.0
        w_ang = np.array([_SPHERE_AREA[spec.n]])
    else:
        dirs, w_ang = quadrature.angular_rule(spec.n, angular_order)
    ys_parts, w_parts = [], []
    for seg_edges in edges:
        lo, hi = seg_edges[:-1], seg_edges[1:]
        mids = 0.5 * (lo + hi)
        halfs = 0.5 * (hi - lo)
        r = (mids[:, None] + halfs[:, None] * _kernels.NODES15[None, :]).ravel()
        w_r = (halfs[:, None] * _kernels.KRONROD_W15[None, :]).ravel()
        pts = (r[:, None, None] * dirs[None, :, :]).reshape(-1, spec.n)
        w = (w_r[:, None] * w_ang[None, :] * (r ** (spec.n - 1))[:, None]).reshape(-1)
        ys_parts.append(pts)
        w_parts.append(w)
    return np.concatenate(ys_parts), np.concatenate(w_parts)


def _output_breakpoints(spec: OperatorSpec, b: ScalarField, f: ScalarField):
    """Radii |x| where the commutator may kink: preimages of the jump radii of
    b and f under A(y) at the radial cuts of the kernel support. Heuristic for
    direction-dependent fields, exact for isotropic ones; only used as panel
    split hints."""
    if spec.field.image_radius is None:
        return ()
    cuts = {spec.r_lo, spec.r_hi, *spec.kernel.breakpoints}
    rhos = {rho for rho in (*f.breakpoints, *b.breakpoints) if rho > 0}
    out = set()
    for c in cuts:
        h = float(spec.field.image_radius(np.array([c]), 1.0)[0])
        if not np.isfinite(h) or h <= 0:
            continue
        for rho in rhos:
            out.add(rho / h)
    return tuple(sorted(out))


def commutator_field(spec: OperatorSpec, b: ScalarField, f: ScalarField,
                     radial_panels=32, angular_order=None) -> ScalarField:
    """The commutator as a batch-evaluable scalar field.

    Uses a fixed composite rule over the kernel support so that evaluation at
    M points costs one vectorized pass over (quadrature nodes) x (points).
    For direction-free fields under a radial kernel the y-integrand depends on
    |y| alone, so the angular nodes collapse to one exact direction.
    """
    collapse = spec.field.direction_free and spec.kernel.radial
    ys, w = support_rule(spec, radial_panels=radial_panels,
                         angular_order=angular_order, collapse_angular=collapse)
    phi = spec.kernel.evaluate(ys)
    r = np.sqrt(np.sum(ys ** 2, axis=-1))
    wphi = w * phi / r ** spec.n
    # Drop nodes where the kernel vanishes; indicator kernels zero half of them.
    live = wphi != 0.0
    ys_l, wphi_l = ys[live], wphi[live]

    # Cap the (nodes x points) work array; larger batches are chunked.
    chunk = max(1, int(2 ** 21 / max(1, len(ys_l))))

    def ev(xs, spec=spec, b=b, f=f, ys=ys_l, wphi=wphi_l, chunk=chunk):
        xs = np.asarray(xs, dtype=float)
        if len(ys) == 0:  # kernel vanished on every node
            return np.zeros(xs.shape[0])
        out = np.empty(xs.shape[0])
        for start in range(0, xs.shape[0], chunk):
            block = xs[start:start + chunk]
            bx = b.evaluate(block)
            pts = spec.field.apply_to(block, ys)  # (Q, M, n)
            flat = pts.reshape(-1, spec.n)
            fv = f.evaluate(flat).reshape(len(ys), -1)
            bv = b.evaluate(flat).reshape(len(ys), -1)
            rows = (bx[None, :] - bv) * fv
            out[start:start + chunk] = _kernels.weighted_rows_sum(
                wphi, np.ascontiguousarray(rows))
        return out

    return ScalarField(
        name=f"commutator({spec.kernel.name},{spec.field.name},{b.name},{f.name})",
        evaluate=ev,
        breakpoints=_output_breakpoints(spec, b, f),
    )
