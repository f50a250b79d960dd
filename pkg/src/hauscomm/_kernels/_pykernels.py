"""Pure-Python (numpy) lane of the hot quadrature kernels.

The compiled lane in ``_ckernels.pyx`` implements the same three functions
with the same summation order, so the two lanes agree to the last bit on
platforms without FMA contraction. Keep any change here mirrored there.
"""

import numpy as np

from ._tables import GAUSS_W15, KRONROD_W15

BACKEND = "python"


def gk15_panels(fvals, half_lengths):
    """Kronrod-15 value and |K15 - G7| error per panel.

    fvals: (P, 15) integrand samples at the panel nodes, ascending node order.
    half_lengths: (P,) half-widths of the panels.
    Returns (values, error_estimates), each (P,).
    """
    fvals = np.ascontiguousarray(fvals, dtype=np.float64)
    half_lengths = np.ascontiguousarray(half_lengths, dtype=np.float64)
    kacc = KRONROD_W15[0] * fvals[:, 0]
    gacc = GAUSS_W15[0] * fvals[:, 0]
    for i in range(1, 15):
        kacc = kacc + KRONROD_W15[i] * fvals[:, i]
        gacc = gacc + GAUSS_W15[i] * fvals[:, i]
    values = half_lengths * kacc
    errors = np.abs(half_lengths * kacc - half_lengths * gacc)
    return values, errors


def ordered_sum(values):
    """Strictly left-to-right accumulation; the deterministic reduction."""
    values = np.ascontiguousarray(values, dtype=np.float64)
    acc = 0.0
    for v in values:
        acc += v
    return acc


def weighted_rows_sum(weights, rows):
    """Ordered sum over axis 0 of weights[i] * rows[i, :].

    weights: (Q,), rows: (Q, N). Returns (N,). Accumulation order over i is
    fixed so results do not depend on execution context.
    """
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    rows = np.ascontiguousarray(rows, dtype=np.float64)
    acc = weights[0] * rows[0]
    for i in range(1, weights.shape[0]):
        acc = acc + weights[i] * rows[i]
    return acc
