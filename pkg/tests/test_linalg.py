"""Closed-form determinants, operator norms, inverses, and the determinant
bound chain, cross-checked against numpy's general-purpose routines."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hauscomm import linalg
from hauscomm.errors import SingularMatrixError


def _random_matrix(rng, n):
    while True:
        A = rng.standard_normal((n, n))
        if abs(np.linalg.det(A)) > 1e-3:
            return A


@pytest.mark.parametrize("n", [1, 2, 3])
def test_det_matches_numpy(n):
    rng = np.random.default_rng(n)
    for _ in range(100):
        A = rng.standard_normal((n, n))
        assert np.isclose(linalg.det(A), np.linalg.det(A), rtol=1e-10, atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_op_norm_matches_numpy(n):
    rng = np.random.default_rng(10 + n)
    for _ in range(100):
        A = rng.standard_normal((n, n))
        assert np.isclose(linalg.op_norm(A), np.linalg.norm(A, 2), rtol=1e-9)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_inverse_matches_numpy(n):
    rng = np.random.default_rng(20 + n)
    for _ in range(100):
        A = _random_matrix(rng, n)
        assert np.allclose(linalg.inverse(A) @ A, np.eye(n), atol=1e-8)


def test_inverse_rejects_singular():
    with pytest.raises(SingularMatrixError):
        linalg.inverse(np.array([[1.0, 2.0], [2.0, 4.0]]))
    with pytest.raises(SingularMatrixError):
        linalg.inverse(np.zeros((3, 3)))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_det_bound_chain_random(n):
    rng = np.random.default_rng(30 + n)
    for _ in range(1000):
        A = _random_matrix(rng, n)
        lhs, mid, rhs, holds = linalg.check_det_bounds(A)
        assert holds
        assert lhs <= mid * (1 + 1e-10) <= rhs * (1 + 1e-10) ** 2


_entries = st.floats(-10.0, 10.0, allow_nan=False, allow_infinity=False)


@settings(max_examples=200, deadline=None)
@given(st.lists(_entries, min_size=4, max_size=4), st.lists(_entries, min_size=4, max_size=4))
def test_det_is_multiplicative(a, b):
    A = np.array(a).reshape(2, 2)
    B = np.array(b).reshape(2, 2)
    assert np.isclose(linalg.det(A @ B), linalg.det(A) * linalg.det(B),
                      rtol=1e-9, atol=1e-9)


@settings(max_examples=200, deadline=None)
@given(st.lists(_entries, min_size=4, max_size=4), st.lists(_entries, min_size=4, max_size=4))
def test_op_norm_is_submultiplicative(a, b):
    A = np.array(a).reshape(2, 2)
    B = np.array(b).reshape(2, 2)
    assert linalg.op_norm(A @ B) <= linalg.op_norm(A) * linalg.op_norm(B) * (1 + 1e-9) + 1e-12


@settings(max_examples=100, deadline=None)
@given(st.lists(_entries, min_size=9, max_size=9))
def test_op_norm_3d_dominates_columns(a):
    A = np.array(a).reshape(3, 3)
    # ||A|| >= |A e_j| for every unit basis vector.
    col_max = max(np.linalg.norm(A[:, j]) for j in range(3))
    assert linalg.op_norm(A) >= col_max * (1 - 1e-9)


def test_op_norm_closed_forms():
    assert linalg.op_norm(np.array([[-3.0]])) == 3.0
    assert np.isclose(linalg.op_norm(np.diag([2.0, 5.0])), 5.0, rtol=1e-12)
    # Shear: singular values of [[1, s], [0, 1]] are the golden-ratio pair.
    phi = (1 + np.sqrt(5)) / 2
    assert np.isclose(linalg.op_norm(np.array([[1.0, 1.0], [0.0, 1.0]])), phi, rtol=1e-10)
