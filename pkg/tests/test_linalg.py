import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.services import linalg
from src.services.linalg import (Subspace, guard_size, left_nullspace, matmul_mod, nullspace, rank, rref, solve_rows,
                                 span_of_blocks)
from src.utils.errors import ResourceGuardError


def test_rref_known_matrix():
    matrix = np.array([[2, 4, 1], [1, 2, 0], [3, 6, 1]])

    rows, pivots = rref(matrix, 7)

    assert pivots == [0, 2]
    assert rows.tolist() == [[1, 2, 0], [0, 0, 1]]


def test_rref_column_order_changes_pivots():
    matrix = np.array([[1, 1, 0], [0, 1, 1]])

    _, pivots = rref(matrix, 5, column_order=[2, 1, 0])

    assert sorted(pivots) == [1, 2]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.sampled_from([2, 3, 7, 101]), st.integers(0, 10 ** 6))
def test_rank_nullity(nrows, ncols, p, seed):
    matrix = np.random.default_rng(seed).integers(0, p, size=(nrows, ncols))

    kernel = nullspace(matrix, p)

    assert kernel.shape == (ncols - rank(matrix, p), ncols)
    assert not np.any(matmul_mod(matrix, kernel.T, p))
    assert not np.any(matmul_mod(left_nullspace(matrix, p), matrix, p))


def test_matmul_mod_is_exact_for_large_primes():
    p = 2147483647
    a = np.array([[p - 1, p - 2, p - 3]])
    b = np.array([[p - 1], [p - 5], [p - 7]])

    expected = ((p - 1) * (p - 1) + (p - 2) * (p - 5) + (p - 3) * (p - 7)) % p

    assert matmul_mod(a, b, p)[0, 0] == expected


def test_solve_rows():
    rows = np.array([[1, 0, 2], [0, 1, 1]])
    vectors = np.array([[2, 3, 7 % 5]])

    coefficients = solve_rows(rows, vectors, 5)

    assert coefficients.tolist() == [[2, 3]]
    with pytest.raises(ValueError):
        solve_rows(rows, np.array([[0, 0, 1]]), 5)


def test_subspace_is_canonical():
    a = Subspace(7, 3, [[1, 2, 3], [0, 1, 1]])
    b = Subspace(7, 3, [[1, 3, 4], [0, 2, 2], [1, 2, 3]])

    assert a == b
    assert hash(a) == hash(b)
    assert a.dim == 2


def test_subspace_operations():
    p = 5
    space = Subspace(p, 4, [[1, 0, 0, 0]])
    bigger = space.extended([[0, 1, 1, 0], [1, 1, 1, 0]])

    assert bigger.dim == 2
    assert bigger == Subspace(p, 4, [[1, 0, 0, 0], [0, 1, 1, 0]])
    assert bigger.contains([3, 2, 2, 0])
    assert not bigger.contains([0, 0, 0, 1])
    assert bigger.contains_subspace(space)
    assert (space + Subspace(p, 4, [[0, 0, 0, 1]])).dim == 2
    assert bigger.coordinates([[3, 2, 2, 0]]).tolist() == [[3, 2]]


def test_complement_from():
    space = Subspace(3, 3, [[1, 0, 0]])
    candidates = np.array([[2, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]])

    chosen, indices = space.complement_from(candidates)

    assert indices == [1, 3]
    assert chosen.shape == (2, 3)
    assert (space.extended(chosen)).dim == 3


def test_span_of_blocks():
    blocks = [np.array([[1, 0, 0]]), np.array([[0, 1, 0], [1, 1, 0]])]

    assert span_of_blocks(11, 3, blocks).dim == 2


def test_guard_size(monkeypatch):
    monkeypatch.setattr(linalg, 'MATRIX_ENTRY_LIMIT', 10)

    with pytest.raises(ResourceGuardError):
        Subspace(5, 6, np.eye(6, dtype=np.int64))


def test_guard_size_names_the_limit(monkeypatch):
    monkeypatch.setattr(linalg, 'MATRIX_ENTRY_LIMIT', 100)

    guard_size(10, 10, 'ideal image')
    with pytest.raises(ResourceGuardError, match='ARTIN_MATRIX_LIMIT') as excinfo:
        guard_size(10, 11, 'ideal image')
    assert 'ideal image of shape 10x11' in str(excinfo.value)
    assert excinfo.value.exit_code == 3
