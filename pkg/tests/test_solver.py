import itertools

import numpy as np
import pytest

from conftest import ring_for
from liederiv.errors import CapacityExceeded, HypothesisViolation
from liederiv.families import AdditiveEndo, FamilyParams, build_family, is_lie_derivation, shape_check
from liederiv.linalg import Subspace
from liederiv.matrix_ring import RRing
from liederiv.algebra import ideal_closure, upper_triangular
from liederiv.solver import (
    families_span,
    lie_derivation_module,
    lie_module_space,
    main_theorem_check,
)


def _nt3_brackets():
    """Brackets of the basis e21, e31, e32 of NT_3(F_3), from plain 3x3 matrices."""
    units = [(1, 0), (2, 0), (2, 1)]
    mats = []
    for i, j in units:
        m = [[0] * 3 for _ in range(3)]
        m[i][j] = 1
        mats.append(m)

    def mul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]

    table = {}
    for u, v in itertools.product(range(3), repeat=2):
        ab, ba = mul(mats[u], mats[v]), mul(mats[v], mats[u])
        table[u, v] = tuple((ab[i][j] - ba[i][j]) % 3 for i, j in units)
    return table


def test_brute_force_count_by_hand():
    """Independent count of Lie derivations of NT_3(F_3): no package code involved."""
    T = _nt3_brackets()

    def apply(M, x):
        return tuple(sum(M[r][c] * x[c] for c in range(3)) % 3 for r in range(3))

    def br(x, y):
        out = [0, 0, 0]
        for u, v in itertools.product(range(3), repeat=2):
            for w in range(3):
                out[w] += x[u] * y[v] * T[u, v][w]
        return tuple(c % 3 for c in out)

    basis = [tuple(int(i == u) for i in range(3)) for u in range(3)]
    count = 0
    for flat in itertools.product(range(3), repeat=9):
        M = [flat[0:3], flat[3:6], flat[6:9]]
        ok = all(
            apply(M, br(a, b)) == tuple((x + y) % 3 for x, y in zip(br(apply(M, a), b), br(a, apply(M, b))))
            for a in basis
            for b in basis
        )
        count += ok
    assert count == 3**6 == 729
    assert lie_module_space(ring_for("n3_f3")).rank == 6


def test_unordered_assembly_matches_ordered():
    R = ring_for("n3_dual")
    assert lie_module_space(R) == lie_module_space(R, ordered=True)


def test_identity_is_not_lie(instance):
    _, R = instance
    identity = AdditiveEndo(R, np.eye(R.D, dtype=np.int64))
    assert not is_lie_derivation(identity)
    assert not lie_module_space(R).contains(identity.matrix.reshape(-1))


def test_module_basis_elements(instance, golden):
    name, R = instance
    basis = lie_derivation_module(R)
    assert len(basis) == golden[name]["lie_module_rank"]
    for endo in basis:
        assert is_lie_derivation(endo)
        assert shape_check(endo)


def test_span_contained_in_module(instance, golden):
    name, R = instance
    span = families_span(R)
    assert span.rank == golden[name]["families_span_rank"]
    assert span.issubspace(lie_module_space(R))
    trace = families_span(R, with_trace=True)
    assert trace.rank == golden[name]["trace_span_rank"]
    assert trace.issubspace(lie_module_space(R))


def test_span_contains_diagonal_example():
    R = ring_for("n3_f3")
    d = np.zeros((3, 1), dtype=np.int64)
    d[1] = 1
    sigma = build_family(FamilyParams("diagonal", {"d": d}), R)
    assert families_span(R).contains(sigma.matrix.reshape(-1))


def test_hypothesis_violation():
    T = upper_triangular(3)
    R = RRing(T, ideal_closure(T, [[0, 1, 0]]), 3)
    with pytest.raises(HypothesisViolation):
        main_theorem_check(R, samples=1)


def test_capacity():
    with pytest.raises(CapacityExceeded):
        lie_module_space(ring_for("n4_dual"), max_dim=21)
    with pytest.raises(CapacityExceeded):
        families_span(ring_for("n4_dual"), max_dim=21)


def test_report_is_reproducible():
    R = ring_for("n5_f5")
    a = main_theorem_check(R, samples=5, seed=11)
    b = main_theorem_check(R, samples=5, seed=11)
    assert a.to_dict() == b.to_dict()
    assert a.passed and a.decomposed_count == 17 + 5 and "timing" not in a.to_dict()


def test_containment_outside_hypotheses():
    T = upper_triangular(3)
    R = RRing(T, ideal_closure(T, [[0, 1, 0]]), 3)
    assert families_span(R).issubspace(lie_module_space(R))


def test_subspace_type():
    assert isinstance(lie_module_space(ring_for("n3_f3")), Subspace)
