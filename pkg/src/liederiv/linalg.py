"""Exact dense linear algebra over the prime field F_p.

Matrices are plain ``numpy`` integer arrays with entries reduced into
``[0, p)``.  Every routine here is deterministic: pivots are taken in the
leftmost available column from the topmost available row, so the reduced
row echelon form (which is unique anyway) and every derived basis are
reproducible bit for bit.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch

__all__ = [
    "as_fp",
    "matmul",
    "rref",
    "rank",
    "kernel",
    "solve",
    "RowReducer",
    "Subspace",
    "subspace_equal",
]

# float64 represents every integer below 2**53 exactly
_FLOAT_EXACT = 2**52


def as_fp(a, p):
    """Return ``a`` as an int64 array reduced mod ``p``."""
    return np.mod(np.asarray(a, dtype=np.int64), p)


def matmul(a, b, p):
    """Product of two reduced matrices, reduced mod ``p``.

    Uses BLAS through float64 whenever the inner sums cannot lose precision.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    inner = a.shape[-1] if a.ndim else 1
    if inner * (p - 1) ** 2 < _FLOAT_EXACT:
        out = a.astype(np.float64) @ b.astype(np.float64)
        return np.mod(out, p).astype(np.int64)
    return np.mod(a.astype(object) @ b.astype(object), p).astype(np.int64)


def _inv(x, p):
    return pow(int(x), -1, p)


def rref(m, p):
    """Reduced row echelon form.

    Returns ``(reduced, rank, pivots)`` where ``reduced`` has the same shape
    as ``m`` with zero rows at the bottom.
    """
    a = as_fp(m, p).copy()
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {a.shape}")
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = a[r] * _inv(a[r, c], p) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, r, pivots


def rank(m, p):
    return rref(m, p)[1]


class RowReducer:
    """Accumulates rows in blocks and keeps their reduced echelon basis.

    Feeding rows in any batching yields the same basis as reducing the
    stacked matrix in one go, because the reduced echelon form of a row
    space is unique.
    """

    def __init__(self, cols, p):
        self.cols = cols
        self.p = p
        self.basis = np.zeros((0, cols), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def rank(self):
        return len(self.pivots)

    def add(self, rows):
        p = self.p
        rows = as_fp(rows, p)
        if rows.size == 0:
            return
        if rows.shape[1] != self.cols:
            raise DimensionMismatch(f"row width {rows.shape[1]} != {self.cols}")
        if self.pivots:
            rows = (rows - matmul(rows[:, self.pivots], self.basis, p)) % p
        rows = rows[np.any(rows, axis=1)]
        if rows.shape[0] == 0:
            return
        new, r, new_piv = rref(rows, p)
        new = new[:r]
        if self.pivots:
            old = (self.basis - matmul(self.basis[:, new_piv], new, p)) % p
        else:
            old = self.basis
        merged = np.vstack([old, new])
        piv = self.pivots + new_piv
        order = np.argsort(piv, kind="stable")
        self.basis = merged[order]
        self.pivots = [piv[i] for i in order]


def kernel(m, p):
    """Basis of ``{x : m x = 0}`` as the rows of a matrix, in reduced echelon form."""
    m = as_fp(m, p)
    cols = m.shape[1]
    reduced, r, pivots = rref(m, p)
    return kernel_from_rref(reduced[:r], pivots, cols, p)


def kernel_from_rref(reduced, pivots, cols, p):
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        if pivots:
            basis[k, pivots] = (-reduced[:, f]) % p
    out, r, _ = rref(basis, p) if len(free) else (basis, 0, [])
    return out[:r]


def solve(m, b, p):
    """Particular solution of ``m x = b`` with free variables set to 0, or None."""
    m = as_fp(m, p)
    b = as_fp(b, p).reshape(-1)
    if m.shape[0] != b.shape[0]:
        raise DimensionMismatch(f"matrix has {m.shape[0]} rows, rhs has {b.shape[0]}")
    cols = m.shape[1]
    reduced, r, pivots = rref(np.hstack([m, b[:, None]]), p)
    if pivots and pivots[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.int64)
    x[pivots] = reduced[:r, cols]
    return x


class Subspace:
    """A subspace of F_p^dim held by its reduced echelon basis.

    Two subspaces are equal exactly when their bases are identical arrays.
    """

    __slots__ = ("p", "dim", "basis", "pivots")

    def __init__(self, p, dim, basis, pivots):
        self.p = p
        self.dim = dim
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def span(cls, vectors, p, dim):
        vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, dim)
        reduced, r, pivots = rref(vectors, p)
        return cls(p, dim, reduced[:r], list(pivots))

    @classmethod
    def zero(cls, p, dim):
        return cls(p, dim, np.zeros((0, dim), dtype=np.int64), [])

    @classmethod
    def full(cls, p, dim):
        return cls(p, dim, np.eye(dim, dtype=np.int64), list(range(dim)))

    @classmethod
    def from_kernel(cls, m, p):
        m = as_fp(m, p)
        return cls.span(kernel(m, p), p, m.shape[1])

    @property
    def rank(self):
        return self.basis.shape[0]

    def __len__(self):
        return self.rank

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return subspace_equal(self, other)

    __hash__ = None

    def __repr__(self):
        return f"Subspace(p={self.p}, dim={self.dim}, rank={self.rank})"

    def _check(self, other):
        if self.p != other.p or self.dim != other.dim:
            raise DimensionMismatch(
                f"subspaces of F_{self.p}^{self.dim} and F_{other.p}^{other.dim}"
            )

    def __add__(self, other):
        self._check(other)
        return Subspace.span(np.vstack([self.basis, other.basis]), self.p, self.dim)

    def coordinates(self, v):
        """Coefficients of ``v`` in this basis, or None when ``v`` is outside."""
        v = as_fp(v, self.p).reshape(-1)
        c = v[self.pivots]
        if np.array_equal(matmul(c, self.basis, self.p), v):
            return c
        return None

    def contains(self, v):
        return self.coordinates(v) is not None

    def contains_all(self, vectors):
        vectors = as_fp(vectors, self.p).reshape(-1, self.dim)
        c = vectors[:, self.pivots]
        return bool(np.array_equal(matmul(c, self.basis, self.p), vectors))

    def __contains__(self, v):
        return self.contains(v)

    def issubspace(self, other):
        self._check(other)
        return other.contains_all(self.basis)

    def equations(self):
        """Matrix ``W`` with ``self == ker W``."""
        if self.rank == 0:
            return np.eye(self.dim, dtype=np.int64)
        return kernel(self.basis, self.p)

    def intersect(self, other):
        self._check(other)
        if self.rank == 0 or other.rank == 0:
            return Subspace.zero(self.p, self.dim)
        w = other.equations()
        if w.shape[0] == 0:
            return self
        coeffs = kernel(matmul(w, self.basis.T, self.p), self.p)
        return Subspace.span(matmul(coeffs, self.basis, self.p), self.p, self.dim)


def subspace_equal(s1, s2):
    """True iff the two subspaces have identical reduced echelon bases."""
    if s1.p != s2.p or s1.dim != s2.dim:
        raise DimensionMismatch(f"F_{s1.p}^{s1.dim} vs F_{s2.p}^{s2.dim}")
    return s1.basis.shape == s2.basis.shape and bool(np.array_equal(s1.basis, s2.basis))
