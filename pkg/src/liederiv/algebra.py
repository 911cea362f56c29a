"""Finite unital associative algebras over F_p given by structure constants.

An element is a coordinate vector in the algebra's basis.  ``table[a, b]``
holds the coordinates of the product ``basis[a] * basis[b]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .errors import (
    ConfigError,
    EvenCharacteristic,
    IdealMismatch,
    NoIdentity,
    NotAssociative,
)
from .linalg import Subspace, as_fp, kernel, matmul

__all__ = [
    "FpAlgebra",
    "IdealSubspace",
    "make_algebra",
    "prime_field",
    "dual_numbers",
    "upper_triangular",
    "ideal_closure",
    "annihilator",
    "center",
    "ideal_square",
]


def _is_prime(p):
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True, eq=False)
class FpAlgebra:
    p: int
    labels: tuple
    one: np.ndarray
    table: np.ndarray = field(repr=False)
    name: str = "table"

    @property
    def dim(self):
        return len(self.labels)

    def mul(self, x, y):
        return np.einsum("a,b,abc->c", x, y, self.table) % self.p

    def left_matrix(self, x):
        """Matrix of ``y -> x*y``."""
        return np.einsum("a,abc->cb", as_fp(x, self.p), self.table) % self.p

    def right_matrix(self, y):
        """Matrix of ``x -> x*y``."""
        return np.einsum("b,abc->ca", as_fp(y, self.p), self.table) % self.p

    def basis_vector(self, a):
        v = np.zeros(self.dim, dtype=np.int64)
        v[a] = 1
        return v

    def element(self, coords):
        return as_fp(coords, self.p).reshape(self.dim)

    @property
    def is_commutative(self):
        return bool(np.array_equal(self.table, self.table.transpose(1, 0, 2)))

    def format(self, x):
        terms = []
        for c, lab in zip(as_fp(x, self.p), self.labels):
            if not c:
                continue
            if lab == "1":
                terms.append(str(c))
            else:
                terms.append(lab if c == 1 else f"{c}*{lab}")
        return " + ".join(terms) or "0"

    def describe(self):
        return {"kind": self.name, "p": self.p, "basis": list(self.labels)}


def _validate(alg):
    p, t = alg.p, alg.dim
    tab = alg.table
    # (e_a e_b) e_c versus e_a (e_b e_c), all triples at once
    left = np.einsum("abk,kcd->abcd", tab, tab) % p
    right = np.einsum("bck,akd->abcd", tab, tab) % p
    bad = np.argwhere(np.any(left != right, axis=3))
    if bad.size:
        a, b, c = (int(i) for i in bad[0])
        raise NotAssociative((alg.labels[a], alg.labels[b], alg.labels[c]))
    for a in range(t):
        e = alg.basis_vector(a)
        if not (np.array_equal(alg.mul(alg.one, e), e) and np.array_equal(alg.mul(e, alg.one), e)):
            raise NoIdentity(alg.labels[a])
    return alg


def _check_modulus(p):
    if not isinstance(p, (int, np.integer)) or p == 2 or not _is_prime(int(p)):
        raise EvenCharacteristic(f"p={p} is not an odd prime")
    return int(p)


def from_table(p, labels, one, table, name="table"):
    p = _check_modulus(p)
    labels = tuple(str(x) for x in labels)
    t = len(labels)
    table = as_fp(table, p)
    if table.shape != (t, t, t):
        raise ConfigError(f"structure table must have shape {(t, t, t)}, got {table.shape}")
    one = as_fp(one, p).reshape(t)
    return _validate(FpAlgebra(p, labels, one, table, name))


def prime_field(p):
    return from_table(p, ["1"], [1], [[[1]]], name="prime")


def dual_numbers(p):
    tab = np.zeros((2, 2, 2), dtype=np.int64)
    tab[0, 0, 0] = 1
    tab[0, 1, 1] = 1
    tab[1, 0, 1] = 1
    return from_table(p, ["1", "t"], [1, 0], tab, name="dual")


def upper_triangular(p):
    """T_2(F_p) with basis E11, E12, E22."""
    tab = np.zeros((3, 3, 3), dtype=np.int64)
    e11, e12, e22 = 0, 1, 2
    tab[e11, e11, e11] = 1
    tab[e11, e12, e12] = 1
    tab[e12, e22, e12] = 1
    tab[e22, e22, e22] = 1
    return from_table(p, ["E11", "E12", "E22"], [1, 0, 1], tab, name="upper2")


def make_algebra(spec):
    """Build an algebra from a description mapping.

    ``spec`` carries ``p`` and ``kind`` (``prime``, ``dual``, ``upper2`` or
    ``table``); the ``table`` kind also needs ``basis``, ``one`` and
    ``products`` (a t x t x t nested list).
    """
    try:
        p = spec["p"]
        kind = spec.get("kind", "prime")
    except (TypeError, KeyError) as exc:
        raise ConfigError(f"algebra description needs 'p' and 'kind': {exc}") from None
    p = _check_modulus(p)
    if kind == "prime":
        return prime_field(p)
    if kind == "dual":
        return dual_numbers(p)
    if kind == "upper2":
        return upper_triangular(p)
    if kind == "table":
        try:
            return from_table(p, spec["basis"], spec["one"], spec["products"])
        except KeyError as exc:
            raise ConfigError(f"table algebra is missing {exc}") from None
    raise ConfigError(f"unknown algebra kind {kind!r}")


class IdealSubspace:
    """A two-sided ideal of ``ambient`` held as a subspace."""

    def __init__(self, ambient, subspace):
        self.ambient = ambient
        self.space = subspace

    @property
    def basis(self):
        return self.space.basis

    @property
    def dim(self):
        return self.space.rank

    def coords(self, x):
        """Coordinates of ``x`` in the ideal's echelon basis (pivot read-off)."""
        return as_fp(x, self.ambient.p)[..., self.space.pivots]

    def __contains__(self, x):
        return self.space.contains(x)

    def __eq__(self, other):
        if not isinstance(other, IdealSubspace):
            return NotImplemented
        return self.space == other.space

    __hash__ = None

    def __repr__(self):
        return f"IdealSubspace(dim={self.dim} in {self.ambient.name} over F_{self.ambient.p})"

    def is_ideal(self):
        alg = self.ambient
        for y in self.basis:
            for a in range(alg.dim):
                e = alg.basis_vector(a)
                if not (alg.mul(e, y) in self.space and alg.mul(y, e) in self.space):
                    return False
        return True

    @classmethod
    def checked(cls, ambient, vectors):
        """Wrap an explicit spanning set, refusing anything that is not an ideal."""
        ideal = cls(ambient, Subspace.span(vectors, ambient.p, ambient.dim))
        if not ideal.is_ideal():
            raise IdealMismatch("spanning set is not closed under multiplication by the algebra")
        return ideal


def ideal_closure(alg, gens):
    """Smallest two-sided ideal containing ``gens``."""
    p, t = alg.p, alg.dim
    space = Subspace.span(np.asarray(gens, dtype=np.int64).reshape(-1, t), p, t)
    while True:
        products = [space.basis]
        for a in range(t):
            e = alg.basis_vector(a)
            products.append(matmul(space.basis, alg.left_matrix(e).T, p))
            products.append(matmul(space.basis, alg.right_matrix(e).T, p))
        grown = Subspace.span(np.vstack(products), p, t)
        if grown.rank == space.rank:
            return IdealSubspace(alg, space)
        space = grown


def annihilator(alg, J):
    """Two-sided annihilator ``{a : aJ = Ja = 0}`` as a subspace of the algebra."""
    p, t = alg.p, alg.dim
    rows = [np.zeros((0, t), dtype=np.int64)]
    for y in J.basis:
        rows.append(alg.right_matrix(y))  # a -> a*y
        rows.append(alg.left_matrix(y))  # a -> y*a
    return Subspace.span(kernel(np.vstack(rows), p), p, t)


def center(alg):
    p, t = alg.p, alg.dim
    rows = []
    for b in range(t):
        e = alg.basis_vector(b)
        rows.append((alg.right_matrix(e) - alg.left_matrix(e)) % p)
    return Subspace.span(kernel(np.vstack(rows), p), p, t)


def ideal_square(alg, J):
    """J^2, the span of all products of pairs of elements of J."""
    vecs = [alg.mul(y, z) for y, z in product(J.basis, repeat=2)]
    return Subspace.span(np.array(vecs).reshape(-1, alg.dim), alg.p, alg.dim)
