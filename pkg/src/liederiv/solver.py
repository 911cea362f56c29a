"""The module of all Lie derivations of R and the span of the known families.

The Lie rule D([a, b]) = [D a, b] + [a, D b] is linear in the entries of
the D x D matrix of D.  Both sides are antisymmetric in (a, b), so the
equations for the pair (b, a) are the negatives of those for (a, b) and the
pair (a, a) gives nothing; iterating unordered pairs u < v of basis
elements yields the full system.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

import numpy as np

from .decompose import decompose
from .errors import CapacityExceeded, HypothesisViolation, TheoremFailure
from .families import (
    AdditiveEndo,
    admissible_kinds,
    build_family,
    family_parameter_space,
)
from .linalg import RowReducer, Subspace, kernel_from_rref, matmul, rank

__all__ = [
    "DEFAULT_MAX_DIM",
    "TheoremReport",
    "lie_constraint_rows",
    "lie_derivation_module",
    "lie_module_space",
    "families_span",
    "family_ranks",
    "check_hypotheses",
    "main_theorem_check",
]

log = logging.getLogger(__name__)

DEFAULT_MAX_DIM = 64
_PAIR_BLOCK = 32


def _check_capacity(R, max_dim):
    if R.D > max_dim:
        raise CapacityExceeded(f"additive dimension D={R.D} exceeds the cap {max_dim}")


def _pairs(D, ordered):
    if ordered:
        return [(u, v) for u in range(D) for v in range(D)]
    return [(u, v) for u in range(D) for v in range(u + 1, D)]


def lie_constraint_rows(R, pairs):
    """Constraint rows over the row-major unknowns M[q, s] for a batch of pairs."""
    D, T = R.D, R.bracket_table
    block = np.zeros((len(pairs), D, D, D), dtype=np.int64)  # [pair, r, q, s]
    rows = np.arange(D)
    for b, (u, v) in enumerate(pairs):
        block[b, rows, rows, :] += T[u, v][None, :]
        block[b, :, :, u] -= T[:, v, :].T
        block[b, :, :, v] -= T[u, :, :].T
    return block.reshape(len(pairs) * D, D * D) % R.p


def _lie_reducer(R, ordered=False):
    D = R.D
    reducer = RowReducer(D * D, R.p)
    pairs = _pairs(D, ordered)
    for start in range(0, len(pairs), _PAIR_BLOCK):
        reducer.add(lie_constraint_rows(R, pairs[start : start + _PAIR_BLOCK]))
    return reducer


def lie_module_space(R, max_dim=DEFAULT_MAX_DIM, ordered=False) -> Subspace:
    """All Lie derivations as a subspace of F_p^(D*D) (row-major matrices)."""
    _check_capacity(R, max_dim)
    reducer = _lie_reducer(R, ordered)
    basis = kernel_from_rref(reducer.basis, reducer.pivots, R.D * R.D, R.p)
    return Subspace.span(basis, R.p, R.D * R.D)


def lie_derivation_module(R, max_dim=DEFAULT_MAX_DIM) -> list:
    """Echelonized basis of the Lie derivations of R."""
    space = lie_module_space(R, max_dim)
    return [AdditiveEndo(R, v.reshape(R.D, R.D)) for v in space.basis]


def family_ranks(R, with_trace=False) -> dict:
    return {kind: len(family_parameter_space(kind, R)) for kind in admissible_kinds(R, with_trace)}


def families_span(R, max_dim=DEFAULT_MAX_DIM, with_trace=False) -> Subspace:
    """Span of every admissible family's outputs, inside F_p^(D*D).

    ``with_trace`` adds the trace-type central family to the eight standard ones.
    """
    _check_capacity(R, max_dim)
    vecs = [np.zeros((0, R.D * R.D), dtype=np.int64)]
    for kind in admissible_kinds(R, with_trace):
        for params in family_parameter_space(kind, R):
            vecs.append(build_family(params, R).matrix.reshape(1, -1))
    return Subspace.span(np.vstack(vecs), R.p, R.D * R.D)


def check_hypotheses(R):
    if R.n == 3 and not R.K.is_commutative:
        raise HypothesisViolation("n = 3 requires a commutative base algebra")


@dataclass
class TheoremReport:
    instance: dict
    D: int
    lie_module_rank: int
    families_span_rank: int
    span_equal: bool
    decomposed_count: int
    max_residual_rank: int
    family_ranks: dict
    seed: int
    samples: int
    with_trace: bool = False
    stage_failures: int = 0
    timing: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.span_equal and self.max_residual_rank == 0

    def to_dict(self):
        """Serializable content; timings are left out so reports are reproducible."""
        return {
            "instance": self.instance,
            "D": self.D,
            "lie_module_rank": self.lie_module_rank,
            "families_span_rank": self.families_span_rank,
            "span_equal": self.span_equal,
            "decomposed_count": self.decomposed_count,
            "max_residual_rank": self.max_residual_rank,
            "stage_failures": self.stage_failures,
            "family_ranks": self.family_ranks,
            "seed": self.seed,
            "samples": self.samples,
            "with_trace": self.with_trace,
        }


def random_elements(space: Subspace, count, seed):
    """Seeded uniform F_p-combinations of the basis of ``space``."""
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(0, space.p, size=(count, space.rank))
    return matmul(coeffs, space.basis, space.p) if space.rank else np.zeros((count, space.dim), dtype=np.int64)


def main_theorem_check(R, samples=100, seed=0, max_dim=DEFAULT_MAX_DIM, with_trace=False) -> TheoremReport:
    """Compare the Lie derivation module with the span of the families and
    decompose every kernel basis element plus ``samples`` seeded random ones.

    Raises TheoremFailure (carrying the partial report and a witness) when
    the spans differ or a residual survives.
    """
    check_hypotheses(R)
    _check_capacity(R, max_dim)
    timing = {}
    t0 = time.perf_counter()
    kernel_space = lie_module_space(R, max_dim)
    timing["kernel"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    span = families_span(R, max_dim, with_trace)
    timing["span"] = time.perf_counter() - t0
    equal = span == kernel_space
    report = TheoremReport(
        instance=R.describe(),
        D=R.D,
        lie_module_rank=kernel_space.rank,
        families_span_rank=span.rank,
        span_equal=equal,
        decomposed_count=0,
        max_residual_rank=0,
        family_ranks=family_ranks(R, with_trace),
        seed=seed,
        samples=samples,
        with_trace=with_trace,
        timing=timing,
    )
    witness = None
    if not equal:
        outside = [v for v in kernel_space.basis if not span.contains(v)]
        outside = outside or [v for v in span.basis if not kernel_space.contains(v)]
        witness = AdditiveEndo(R, outside[0].reshape(R.D, R.D))
    t0 = time.perf_counter()
    inputs = np.vstack([kernel_space.basis, random_elements(kernel_space, samples, seed)])
    for vec in inputs:
        endo = AdditiveEndo(R, vec.reshape(R.D, R.D))
        dec = decompose(endo, with_trace=with_trace)
        res_rank = rank(dec.residual.matrix, R.p)
        report.decomposed_count += 1
        report.max_residual_rank = max(report.max_residual_rank, res_rank)
        report.stage_failures += sum(1 for s in dec.stage_log if not s.ok)
        if res_rank and witness is None:
            witness = endo
    timing["decompose"] = time.perf_counter() - t0
    log.info("theorem check D=%d timings %s", R.D, {k: round(v, 3) for k, v in timing.items()})
    if not equal:
        raise TheoremFailure("Lie derivation module differs from the span of the families", witness, report)
    if report.max_residual_rank:
        raise TheoremFailure("decomposition left a nonzero residual", witness, report)
    return report
