import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liederiv.errors import DimensionMismatch
from liederiv.linalg import RowReducer, Subspace, kernel, matmul, rank, rref, solve, subspace_equal


def mats(p, max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    ).map(lambda rows: np.array(rows, dtype=np.int64))


def test_rank_examples():
    assert rank(np.eye(3, dtype=np.int64), 3) == 3
    assert rank(np.zeros((3, 4), dtype=np.int64), 3) == 0
    reduced, r, pivots = rref(np.array([[1, 2], [2, 4]]), 3)
    assert r == 1 and list(pivots) == [0]
    assert reduced.tolist() == [[1, 2], [0, 0]]


def test_kernel_examples():
    assert kernel(np.array([[1, 2], [2, 4]]), 3).tolist() == [[1, 1]]
    assert kernel(np.eye(3, dtype=np.int64), 3).shape == (0, 3)
    assert kernel(np.zeros((2, 3), dtype=np.int64), 3).shape[0] == 3


def test_solve_examples():
    assert solve(np.array([[2]]), np.array([1]), 3).tolist() == [2]
    assert solve(np.zeros((2, 2), dtype=np.int64), np.array([1, 0]), 3) is None
    b = np.array([2, 0, 1])
    assert solve(np.eye(3, dtype=np.int64), b, 3).tolist() == b.tolist()


def test_subspace_equality_examples():
    assert Subspace.span([[1, 0]], 3, 2) == Subspace.span([[2, 0]], 3, 2)
    assert Subspace.span([[1, 0]], 3, 2) != Subspace.span([[0, 1]], 3, 2)
    rows = [[1, 2, 0], [0, 1, 1], [1, 0, 2]]
    assert Subspace.span(rows, 5, 3) == Subspace.span(rows[::-1], 5, 3)
    with pytest.raises(DimensionMismatch):
        subspace_equal(Subspace.zero(3, 2), Subspace.zero(3, 3))


@pytest.mark.parametrize("cols", [1, 2, 3])
def test_kernel_size_matches_enumeration(cols):
    """Count solutions of Mx = 0 over F_3 by listing every x."""
    rng = np.random.default_rng(cols)
    for _ in range(5):
        m = rng.integers(0, 3, size=(2, cols * 3))
        count = sum(
            1 for x in itertools.product(range(3), repeat=cols * 3) if not (m @ np.array(x) % 3).any()
        )
        assert count == 3 ** kernel(m, 3).shape[0]


@settings(max_examples=60, deadline=None)
@given(mats(5))
def test_rank_nullity_and_kernel_vectors(m):
    k = kernel(m, 5)
    assert rank(m, 5) + k.shape[0] == m.shape[1]
    assert not matmul(m, k.T, 5).any()


@settings(max_examples=60, deadline=None)
@given(mats(7))
def test_rref_is_idempotent(m):
    reduced, r, pivots = rref(m, 7)
    again, r2, pivots2 = rref(reduced, 7)
    assert r == r2 and list(pivots) == list(pivots2)
    assert np.array_equal(reduced, again)


@settings(max_examples=60, deadline=None)
@given(mats(3, max_rows=10), st.integers(1, 4))
def test_row_reducer_matches_batch_rref(m, chunk):
    reducer = RowReducer(m.shape[1], 3)
    for start in range(0, m.shape[0], chunk):
        reducer.add(m[start : start + chunk])
    reduced, r, pivots = rref(m, 3)
    assert reducer.rank == r
    assert list(reducer.pivots) == list(pivots)
    assert np.array_equal(reducer.basis, reduced[:r])


@settings(max_examples=60, deadline=None)
@given(mats(5), st.data())
def test_solve_consistent_systems(m, data):
    x = np.array(data.draw(st.lists(st.integers(0, 4), min_size=m.shape[1], max_size=m.shape[1])))
    b = matmul(m, x, 5)
    sol = solve(m, b, 5)
    assert sol is not None and np.array_equal(matmul(m, sol, 5), b)


@settings(max_examples=40, deadline=None)
@given(mats(3, max_rows=4, max_cols=5), mats(3, max_rows=4, max_cols=5))
def test_intersection_and_sum_dimensions(a, b):
    cols = min(a.shape[1], b.shape[1])
    s, t = Subspace.span(a[:, :cols], 3, cols), Subspace.span(b[:, :cols], 3, cols)
    meet = s.intersect(t)
    assert meet.issubspace(s) and meet.issubspace(t)
    assert (s + t).rank + meet.rank == s.rank + t.rank


def test_large_modulus_uses_exact_path():
    p = 2**31 - 1
    a = np.full((1, 3), p - 1, dtype=np.int64)
    assert matmul(a, a.T, p).tolist() == [[3]]
