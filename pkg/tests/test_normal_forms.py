import random

import pytest

from total_cofibre.errors import DimensionMismatchError
from total_cofibre.linalg import (
    IntegerMatrix,
    SparseMatrix,
    hermite_normal_form,
    invariant_factors,
    is_smith_normal_form,
    kernel_basis,
    smith_normal_form,
    solve_integer,
)


def _random_matrix(rng: random.Random, rows: int, cols: int) -> IntegerMatrix:
    return IntegerMatrix.from_rows([[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)], cols)


def test_matrix_algebra():
    m = IntegerMatrix.from_rows([[1, 2], [3, 4]])
    assert (m @ IntegerMatrix.identity(2)) == m
    assert m.transpose().to_rows() == [[1, 3], [2, 4]]
    assert m.determinant() == -2
    assert (m - m).is_zero()
    assert IntegerMatrix.from_rows([[1, 1], [0, 1]]).is_unimodular()


def test_sparse_triplets_convert_both_ways():
    m = IntegerMatrix.from_rows([[0, 5], [-7, 0], [0, 0]])
    sparse = m.to_sparse()
    assert isinstance(sparse, SparseMatrix)
    assert sparse.to_triplets() == [(0, 1, 5), (1, 0, -7)]
    assert sparse.to_dense() == m


def test_hnf_of_identity():
    h, u = hermite_normal_form(IntegerMatrix.identity(2))
    assert h == IntegerMatrix.identity(2)
    assert u == IntegerMatrix.identity(2)


def test_hnf_of_zero_matrix():
    h, u = hermite_normal_form(IntegerMatrix.zeros(2, 3))
    assert h.is_zero()
    assert u == IntegerMatrix.identity(3)


def test_hnf_pivots_of_small_matrix():
    m = IntegerMatrix.from_rows([[2, 4], [6, 8]])
    h, u = hermite_normal_form(m)
    assert m @ u == h
    assert u.is_unimodular()
    assert abs(h.determinant()) == 8
    assert h[0, 1] == 0


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[1, 0], [0, 1]], [[1, 0], [0, 1]]),
        ([[2, 4], [6, 8]], [[2, 0], [0, 4]]),
        ([[0]], [[0]]),
    ],
)
def test_smith_normal_form_examples(rows, expected):
    m = IntegerMatrix.from_rows(rows)
    d, u, v = smith_normal_form(m)
    assert d.to_rows() == expected
    assert u @ m @ v == d


def test_smith_reconstruction_on_random_matrices():
    rng = random.Random(11)
    for _ in range(40):
        m = _random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        d, u, v = smith_normal_form(m)
        assert u @ m @ v == d
        assert u.is_unimodular() and v.is_unimodular()
        assert is_smith_normal_form(d)
        h, w = hermite_normal_form(m)
        assert m @ w == h
        assert w.is_unimodular()


def test_invariant_factors_skip_zeros():
    assert invariant_factors(IntegerMatrix.from_rows([[2, 0], [0, 0]])) == (2,)


@pytest.mark.parametrize(
    "rows, b, solvable",
    [
        ([[2]], [4], True),
        ([[2]], [3], False),
        ([[2, 3]], [1], True),
    ],
)
def test_solve_integer(rows, b, solvable):
    m = IntegerMatrix.from_rows(rows)
    x = solve_integer(m, b)
    if not solvable:
        assert x is None
        return
    assert m.apply(x) == tuple(b)


def test_solve_integer_rejects_mismatched_rhs():
    with pytest.raises(DimensionMismatchError):
        solve_integer(IntegerMatrix.from_rows([[1, 2]]), [1, 2])


def test_kernel_basis_spans_kernel():
    m = IntegerMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
    k = kernel_basis(m)
    assert k.cols == 2
    assert (m @ k).is_zero()
