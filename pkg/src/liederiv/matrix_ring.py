"""The matrix ring R_n(K, J) = NT_n(K) + M_n(J).

Entry (i, j) of a member ranges over J when i <= j and over K when i > j.
Positions are 1-based throughout, as in matrix notation.  An element is
stored as an ``(n, n, t)`` integer array of K-coordinates, where ``t`` is
the dimension of K.

The additive basis lists positions row-major, (1,1), (1,2), ..., (n,n),
and within a position the echelon basis of I_{i,j} (the standard basis of
K below the diagonal, the reduced echelon basis of J on and above it).
Coordinates of an element with respect to that basis form a vector of
length ``D``.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .algebra import FpAlgebra, IdealSubspace, annihilator, center
from .errors import FormulaMismatch, IdealMismatch, MembershipError, RingMismatch, SizeTooSmall
from .linalg import Subspace, as_fp, kernel, matmul

__all__ = ["RRing", "RMatrix", "make_matrix_ring", "bracket", "ann_R", "center_R"]


class RRing:
    def __init__(self, K: FpAlgebra, J: IdealSubspace, n: int):
        if n < 3:
            raise SizeTooSmall(f"matrix size must be at least 3, got {n}")
        if J.ambient is not K and not (
            J.ambient.p == K.p and np.array_equal(J.ambient.table, K.table)
        ):
            raise IdealMismatch("ideal belongs to a different algebra")
        if not J.is_ideal():
            raise IdealMismatch("J is not a two-sided ideal of K")
        self.K = K
        self.J = J
        self.n = n
        self.p = K.p
        self.t = K.dim
        self.positions = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
        self._offset = {}
        basis = []
        for i, j in self.positions:
            self._offset[(i, j)] = len(basis)
            for v in self.position_basis(i, j):
                basis.append((i, j, v))
        self.basis = basis
        self.D = len(basis)

    def __repr__(self):
        return f"RRing(n={self.n}, K={self.K.name}, dim J={self.J.dim}, D={self.D})"

    def describe(self):
        return {
            "n": self.n,
            "p": self.p,
            "algebra": self.K.name,
            "K_basis": list(self.K.labels),
            "J_basis": [self.K.format(v) for v in self.J.basis],
            "D": self.D,
        }

    def position_space(self, i, j) -> Subspace:
        """I_{i,j}: J on and above the diagonal, K below it."""
        if i <= j:
            return self.J.space
        return Subspace.full(self.p, self.t)

    def position_basis(self, i, j):
        return self.position_space(i, j).basis

    def slot(self, i, j):
        """Slice of the coordinate vector belonging to position (i, j)."""
        start = self._offset[(i, j)]
        return slice(start, start + self.position_basis(i, j).shape[0])

    # coordinate conversion

    @cached_property
    def basis_matrix(self):
        """D x (n*n*t): row u is basis element u flattened."""
        n, t = self.n, self.t
        out = np.zeros((self.D, n * n * t), dtype=np.int64)
        for u, (i, j, v) in enumerate(self.basis):
            base = ((i - 1) * n + (j - 1)) * t
            out[u, base : base + t] = v
        return out

    @cached_property
    def extract_matrix(self):
        """(n*n*t) x D: reads coordinates off pivot entries of each position."""
        n, t = self.n, self.t
        out = np.zeros((n * n * t, self.D), dtype=np.int64)
        for i, j in self.positions:
            base = ((i - 1) * n + (j - 1)) * t
            piv = self.position_space(i, j).pivots
            for r, c in enumerate(piv):
                out[base + c, self._offset[(i, j)] + r] = 1
        return out

    @cached_property
    def basis_arrays(self):
        return self.basis_matrix.reshape(self.D, self.n, self.n, self.t)

    def to_coords(self, arr, check=True):
        """Coordinates of one element or a stack of elements ``(..., n, n, t)``."""
        arr = as_fp(arr, self.p)
        lead = arr.shape[:-3]
        flat = arr.reshape(-1, self.n * self.n * self.t)
        coords = matmul(flat, self.extract_matrix, self.p)
        if check:
            back = matmul(coords, self.basis_matrix, self.p)
            bad = np.argwhere(back != flat)
            if bad.size:
                k = int(bad[0][1]) // self.t
                i, j = divmod(k, self.n)
                raise MembershipError(f"entry ({i + 1},{j + 1}) lies outside I_{{{i + 1},{j + 1}}}")
        return coords.reshape(*lead, self.D)

    def from_coords(self, vec):
        vec = as_fp(vec, self.p)
        lead = vec.shape[:-1]
        flat = matmul(vec.reshape(-1, self.D), self.basis_matrix, self.p)
        return flat.reshape(*lead, self.n, self.n, self.t)

    def contains(self, arr):
        try:
            self.to_coords(arr)
        except MembershipError:
            return False
        return True

    # arithmetic on raw (.., n, n, t) arrays

    def zeros(self):
        return np.zeros((self.n, self.n, self.t), dtype=np.int64)

    def unit(self, i, j, x=None):
        """x * e_{i,j}; x defaults to the identity of K."""
        out = self.zeros()
        out[i - 1, j - 1] = self.K.one if x is None else as_fp(x, self.p)
        return out

    def identity_times(self, z):
        """z * E for z in K (a member of R only when z lies in J)."""
        out = self.zeros()
        for i in range(self.n):
            out[i, i] = as_fp(z, self.p)
        return out

    def mul(self, x, y):
        return np.einsum("...ija,...jkb,abc->...ikc", x, y, self.K.table) % self.p

    def bracket(self, x, y):
        return (self.mul(x, y) - self.mul(y, x)) % self.p

    @cached_property
    def product_table(self):
        """``P[u, v]`` = coordinates of basis[u] * basis[v]."""
        b = self.basis_arrays
        prods = np.einsum("uija,vjkb,abc->uvikc", b, b, self.K.table) % self.p
        return self.to_coords(prods)

    @cached_property
    def bracket_table(self):
        """``T[u, v]`` = coordinates of [basis[u], basis[v]]."""
        P = self.product_table
        return (P - P.transpose(1, 0, 2)) % self.p

    def basis_label(self, u):
        i, j, v = self.basis[u]
        return f"({self.K.format(v)})e{i},{j}"


def make_matrix_ring(K, J, n):
    return RRing(K, J, n)


class RMatrix:
    """An element of R_n(K, J); entry (i, j) is checked to lie in I_{i,j}."""

    __slots__ = ("ring", "entries")

    def __init__(self, ring: RRing, entries):
        entries = as_fp(entries, ring.p).reshape(ring.n, ring.n, ring.t)
        ring.to_coords(entries)
        self.ring = ring
        self.entries = entries

    @classmethod
    def from_coords(cls, ring, vec):
        return cls(ring, ring.from_coords(vec))

    @classmethod
    def unit(cls, ring, i, j, x=None):
        return cls(ring, ring.unit(i, j, x))

    @property
    def coords(self):
        return self.ring.to_coords(self.entries, check=False)

    def _same(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        if other.ring is not self.ring:
            raise RingMismatch("operands belong to different rings")
        return other

    def __add__(self, other):
        other = self._same(other)
        return RMatrix(self.ring, self.entries + other.entries)

    def __sub__(self, other):
        other = self._same(other)
        return RMatrix(self.ring, self.entries - other.entries)

    def __neg__(self):
        return RMatrix(self.ring, -self.entries)

    def __rmul__(self, c):
        return RMatrix(self.ring, int(c) * self.entries)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.__rmul__(other)
        other = self._same(other)
        return RMatrix(self.ring, self.ring.mul(self.entries, other.entries))

    def __eq__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        return other.ring is self.ring and bool(np.array_equal(self.entries, other.entries))

    __hash__ = None

    def is_zero(self):
        return not self.entries.any()

    def __repr__(self):
        K = self.ring.K
        terms = [
            f"({K.format(self.entries[i, j])})e{i + 1},{j + 1}"
            for i in range(self.ring.n)
            for j in range(self.ring.n)
            if self.entries[i, j].any()
        ]
        return " + ".join(terms) or "0"


def bracket(a: RMatrix, b: RMatrix) -> RMatrix:
    """Lie product ab - ba."""
    if a.ring is not b.ring:
        raise RingMismatch("operands belong to different rings")
    return RMatrix(a.ring, a.ring.bracket(a.entries, b.entries))


def _solve_commuting(R, left_rows, right_rows):
    rows = np.vstack([left_rows, right_rows]) % R.p
    return Subspace.span(kernel(rows, R.p), R.p, R.D)


def ann_R(R: RRing) -> Subspace:
    """Annihilator of R, solved directly and matched against Ann_K(J) e_{n,1}."""
    P = R.product_table
    # a = sum c_u b_u;  a*b_v = sum_u c_u P[u, v];  b_v*a = sum_u c_u P[v, u]
    left = np.concatenate([P[:, v, :].T for v in range(R.D)])
    right = np.concatenate([P[v, :, :].T for v in range(R.D)])
    solved = _solve_commuting(R, left, right)
    ann_k = annihilator(R.K, R.J)
    formula = [R.to_coords(R.unit(R.n, 1, a)) for a in ann_k.basis]
    expected = Subspace.span(np.array(formula).reshape(-1, R.D), R.p, R.D)
    if solved != expected:
        raise FormulaMismatch("solved annihilator of R differs from Ann_K(J)e_{n,1}")
    return solved


def center_R(R: RRing) -> Subspace:
    """Center of R, solved directly and matched against AnnR + (J cap C(K))E."""
    T = R.bracket_table
    rows = np.concatenate([T[:, v, :].T for v in range(R.D)])
    solved = Subspace.span(kernel(rows, R.p), R.p, R.D)
    scalars = R.J.space.intersect(center(R.K))
    e_part = [R.to_coords(R.identity_times(z)) for z in scalars.basis]
    expected = ann_R(R) + Subspace.span(np.array(e_part).reshape(-1, R.D), R.p, R.D)
    if solved != expected:
        raise FormulaMismatch("solved center of R differs from AnnR + (J cap C(K))E")
    return solved
