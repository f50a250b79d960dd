# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled lane of the hot quadrature kernels.

Mirrors ``_pykernels.py`` exactly, including accumulation order; build with
fp-contract disabled so both lanes round identically.
"""

import numpy as np

cimport numpy as cnp

from ._tables import GAUSS_W15, KRONROD_W15

cnp.import_array()

BACKEND = "compiled"

cdef double[15] _KW
cdef double[15] _GW
for _i in range(15):
    _KW[_i] = KRONROD_W15[_i]
    _GW[_i] = GAUSS_W15[_i]


def gk15_panels(fvals, half_lengths):
    """Kronrod-15 value and |K15 - G7| error per panel; see the python lane."""
    cdef double[:, ::1] fv = np.ascontiguousarray(fvals, dtype=np.float64)
    cdef double[::1] hl = np.ascontiguousarray(half_lengths, dtype=np.float64)
    cdef Py_ssize_t npanels = fv.shape[0]
    values = np.empty(npanels, dtype=np.float64)
    errors = np.empty(npanels, dtype=np.float64)
    cdef double[::1] val = values
    cdef double[::1] err = errors
    cdef Py_ssize_t p, i
    cdef double kacc, gacc, kv, gv
    for p in range(npanels):
        kacc = _KW[0] * fv[p, 0]
        gacc = _GW[0] * fv[p, 0]
        for i in range(1, 15):
            kacc = kacc + _KW[i] * fv[p, i]
            gacc = gacc + _GW[i] * fv[p, i]
        kv = hl[p] * kacc
        gv = hl[p] * gacc
        val[p] = kv
        err[p] = kv - gv if kv >= gv else gv - kv
    return values, errors


def ordered_sum(values):
    """Strictly left-to-right accumulation; the deterministic reduction."""
    cdef double[::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef double acc = 0.0
    cdef Py_ssize_t i
    for i in range(v.shape[0]):
        acc += v[i]
    return acc


def weighted_rows_sum(weights, rows):
    """Ordered sum over axis 0 of weights[i] * rows[i, :]; see the python lane."""
    cdef double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef double[:, ::1] r = np.ascontiguousarray(rows, dtype=np.float64)
    cdef Py_ssize_t q = r.shape[0]
    cdef Py_ssize_t ncols = r.shape[1]
    out = np.empty(ncols, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i, j
    for j in range(ncols):
        o[j] = w[0] * r[0, j]
    for i in range(1, q):
        for j in range(ncols):
            o[j] = o[j] + w[i] * r[i, j]
    return out
