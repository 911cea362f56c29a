import numpy as np
import pytest

from conftest import ring_for
from liederiv.algebra import dual_numbers, ideal_closure, prime_field, upper_triangular
from liederiv.errors import IdealMismatch, MembershipError, RingMismatch, SizeTooSmall
from liederiv.linalg import Subspace
from liederiv.matrix_ring import RMatrix, RRing, ann_R, bracket, center_R


def zero_ideal(K):
    return ideal_closure(K, np.zeros((0, K.dim), dtype=np.int64))


def test_dimensions():
    F = prime_field(3)
    R = RRing(F, zero_ideal(F), 3)
    assert R.D == 3
    assert [(i, j) for i, j, _ in R.basis] == [(2, 1), (3, 1), (3, 2)]
    A = dual_numbers(3)
    assert RRing(A, ideal_closure(A, [[0, 1]]), 4).D == 22
    with pytest.raises(SizeTooSmall):
        RRing(F, zero_ideal(F), 2)


def test_ideal_must_match():
    A = dual_numbers(3)
    with pytest.raises(IdealMismatch):
        RRing(prime_field(3), ideal_closure(A, [[0, 1]]), 3)


def test_bracket_of_units():
    R = ring_for("n3_dual")
    e = lambda i, j: RMatrix.unit(R, i, j)  # noqa: E731
    assert bracket(e(2, 1), RMatrix.unit(R, 1, 3, [0, 1])) == RMatrix.unit(R, 2, 3, [0, 1])
    t13 = RMatrix.unit(R, 1, 3, [0, 1])
    lhs = bracket(t13, e(3, 1))
    assert lhs == RMatrix.unit(R, 1, 1, [0, 1]) - RMatrix.unit(R, 3, 3, [0, 1])
    assert bracket(t13, t13).is_zero()


def test_bracket_over_full_ideal():
    K = prime_field(3)
    R = RRing(K, ideal_closure(K, [[1]]), 3)
    e = lambda i, j: RMatrix.unit(R, i, j)  # noqa: E731
    assert bracket(e(2, 1), e(1, 3)) == e(2, 3)
    assert bracket(e(1, 3), e(3, 1)) == e(1, 1) - e(3, 3)


def test_membership():
    R = ring_for("n3_f3")
    with pytest.raises(MembershipError):
        RMatrix.unit(R, 1, 2)
    with pytest.raises(RingMismatch):
        RMatrix.unit(R, 2, 1) + RMatrix.unit(ring_for("n5_f5"), 2, 1)
    x = RMatrix.unit(R, 3, 1, [2])
    assert RMatrix.from_coords(R, x.coords) == x


def test_coordinates_round_trip(instance):
    _, R = instance
    rng = np.random.default_rng(1)
    coords = rng.integers(0, R.p, size=(5, R.D))
    assert np.array_equal(R.to_coords(R.from_coords(coords)), coords)


def test_annihilator_and_center_examples():
    F = prime_field(3)
    R = RRing(F, zero_ideal(F), 3)
    e31 = R.to_coords(R.unit(3, 1))
    assert ann_R(R) == Subspace.span([e31], 3, R.D)
    assert center_R(R) == Subspace.span([e31], 3, R.D)

    R = ring_for("n3_dual")
    t31 = R.to_coords(R.unit(3, 1, [0, 1]))
    tE = R.to_coords(R.identity_times([0, 1]))
    assert ann_R(R) == Subspace.span([t31], 3, R.D)
    assert center_R(R) == Subspace.span([t31, tE], 3, R.D)

    R = ring_for("n4_t2")
    e12_41 = R.to_coords(R.unit(4, 1, [0, 1, 0]))
    assert ann_R(R) == Subspace.span([e12_41], 3, R.D)
    assert center_R(R) == Subspace.span([e12_41], 3, R.D)


def test_noncommutative_ring_product():
    T = upper_triangular(3)
    R = RRing(T, ideal_closure(T, [[0, 1, 0]]), 4)
    a = RMatrix.unit(R, 2, 1, [1, 0, 0])
    b = RMatrix.unit(R, 1, 3, [0, 1, 0])
    assert (a * b) == RMatrix.unit(R, 2, 3, [0, 1, 0])
    assert (b * a).is_zero()
