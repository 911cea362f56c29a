"""Additive endomorphisms of R and the derivation families built on them.

An :class:`AdditiveEndo` is a D x D matrix over F_p whose column ``u`` holds
the coordinates of the image of basis element ``u``.  Since every additive
map between F_p-vector spaces is F_p-linear, this captures all additive
maps of R.

Family parameters are linear maps stored as matrices in K-coordinates:
a map with domain K is ``t x t`` (column ``a`` is the image of the ``a``-th
basis element of K), a map with domain J is ``t x k`` (column ``r`` is the
image of the ``r``-th echelon basis element of J).  All side conditions of
every family are linear in these matrices, so the admissible parameters of
a family form a subspace that can be solved for exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .algebra import annihilator, center
from .errors import InvalidParams, ShapeViolation, WrongSize
from .linalg import as_fp, kernel, matmul
from .matrix_ring import RMatrix, RRing

__all__ = [
    "AdditiveEndo",
    "FamilyParams",
    "Violation",
    "LieCheck",
    "KINDS",
    "EXTRA_KINDS",
    "DERIVATION_KINDS",
    "admissible_kinds",
    "is_lie_derivation",
    "is_derivation",
    "param_layout",
    "validate_family_params",
    "build_family",
    "family_parameter_space",
    "shape_violations",
    "shape_check",
]

INNER = "inner"
DIAGONAL = "diagonal"
RING = "ring"
ALMOST_ANNIHILATOR = "almost_annihilator"
CENTRAL_LIE = "central_lie"
SPECIAL_I = "special_i"
SPECIAL_II = "special_ii"
SPECIAL_III = "special_iii"
# x -> tau(x_11 + ... + x_nn) E with tau: J -> J cap C(K) killing [K, J]; a central
# Lie derivation whenever J cap C(K) != 0 that the central family does not reach
CENTRAL_TRACE = "central_trace"

KINDS = (INNER, DIAGONAL, RING, ALMOST_ANNIHILATOR, CENTRAL_LIE, SPECIAL_I, SPECIAL_II, SPECIAL_III)
EXTRA_KINDS = (CENTRAL_TRACE,)
# families that satisfy the associative Leibniz rule, not only the Lie one
DERIVATION_KINDS = (INNER, DIAGONAL, RING, ALMOST_ANNIHILATOR)


class AdditiveEndo:
    __slots__ = ("ring", "matrix")

    def __init__(self, ring: RRing, matrix):
        matrix = as_fp(matrix, ring.p)
        if matrix.shape != (ring.D, ring.D):
            raise ValueError(f"endomorphism matrix must be {ring.D}x{ring.D}, got {matrix.shape}")
        self.ring = ring
        self.matrix = matrix

    @classmethod
    def zero(cls, ring):
        return cls(ring, np.zeros((ring.D, ring.D), dtype=np.int64))

    @classmethod
    def from_images(cls, ring, images):
        """Build from the ``(D, n, n, t)`` stack of images of the basis."""
        coords = ring.to_coords(np.asarray(images))
        return cls(ring, coords.T)

    def __add__(self, other):
        return AdditiveEndo(self.ring, self.matrix + other.matrix)

    def __sub__(self, other):
        return AdditiveEndo(self.ring, self.matrix - other.matrix)

    def __neg__(self):
        return AdditiveEndo(self.ring, -self.matrix)

    def __rmul__(self, c):
        return AdditiveEndo(self.ring, int(c) * self.matrix)

    def __eq__(self, other):
        if not isinstance(other, AdditiveEndo):
            return NotImplemented
        return self.ring is other.ring and bool(np.array_equal(self.matrix, other.matrix))

    __hash__ = None

    def is_zero(self):
        return not self.matrix.any()

    def __repr__(self):
        return f"AdditiveEndo(D={self.ring.D}, nonzero={int(np.count_nonzero(self.matrix))})"

    def apply(self, x):
        """Image of an element given as an ``(n, n, t)`` array or RMatrix."""
        arr = x.entries if isinstance(x, RMatrix) else x
        R = self.ring
        return R.from_coords(matmul(self.matrix, R.to_coords(arr), R.p))

    def __call__(self, x):
        return RMatrix(self.ring, self.apply(x))

    def component(self, i, j, s, t):
        """The component map I_{i,j} -> I_{s,t} as a K-coordinate matrix.

        Column ``r`` is the (s, t) entry of the image of the ``r``-th basis
        element of I_{i,j} placed at position (i, j).
        """
        R = self.ring
        block = self.matrix[R.slot(s, t), R.slot(i, j)]
        return matmul(R.position_basis(s, t).T, block, R.p)

    def component_at(self, i, j, s, t, x):
        """(s, t) entry of the image of x e_{i,j}."""
        R = self.ring
        x = as_fp(x, R.p)
        return matmul(self.component(i, j, s, t), x[R.position_space(i, j).pivots], R.p)

    def to_text(self):
        """Plain-text form: a ``p D`` header, then D rows of D integers."""
        lines = [f"{self.ring.p} {self.ring.D}"]
        lines += [" ".join(str(int(v)) for v in row) for row in self.matrix]
        return "\n".join(lines) + "\n"


@dataclass
class FamilyParams:
    kind: str
    maps: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "kind": self.kind,
            "maps": {k: np.asarray(v).tolist() for k, v in self.maps.items()},
        }

    def is_zero(self):
        return not any(np.asarray(v).any() for v in self.maps.values())


@dataclass(frozen=True)
class Violation:
    condition: str
    witness: str

    def __str__(self):
        return f"{self.condition} [{self.witness}]"


@dataclass
class LieCheck:
    ok: bool
    pair: tuple | None = None
    defect: RMatrix | None = None

    def __bool__(self):
        return self.ok


def admissible_kinds(R, with_trace=False):
    skip = SPECIAL_II if R.n == 3 else SPECIAL_III
    kinds = tuple(k for k in KINDS if k != skip)
    return kinds + EXTRA_KINDS if with_trace else kinds


# Lie and Leibniz rule checks


def _leibniz_defect(endo, table):
    M = endo.matrix
    p = endo.ring.p
    lhs = np.einsum("rs,uvs->uvr", M, table)
    first = np.einsum("qu,qvr->uvr", M, table)
    second = np.einsum("qv,uqr->uvr", M, table)
    return (lhs - first - second) % p


def _first_failure(endo, defect):
    bad = np.argwhere(defect.any(axis=2))
    if not bad.size:
        return LieCheck(True)
    u, v = (int(x) for x in bad[0])
    R = endo.ring
    return LieCheck(False, (R.basis_label(u), R.basis_label(v)), RMatrix.from_coords(R, defect[u, v]))


def is_lie_derivation(endo: AdditiveEndo) -> LieCheck:
    """Check D([a,b]) = [D a, b] + [a, D b] on every ordered pair of basis elements."""
    return _first_failure(endo, _leibniz_defect(endo, endo.ring.bracket_table))


def is_derivation(endo: AdditiveEndo) -> LieCheck:
    """Check D(ab) = D(a) b + a D(b) on every ordered pair of basis elements."""
    return _first_failure(endo, _leibniz_defect(endo, endo.ring.product_table))


# per-ring data shared by the validators


class _Context:
    def __init__(self, R):
        K, J = R.K, R.J
        self.R = R
        self.p = R.p
        self.t = K.dim
        self.k = J.dim
        self.K_basis = [K.basis_vector(a) for a in range(self.t)]
        self.J_basis = list(J.basis)
        self.ann = annihilator(K, J)
        self.jc = J.space.intersect(center(K))
        self.W_ann = self.ann.equations()
        self.W_J = J.space.equations()
        self.W_jc = self.jc.equations()

    def j_coords(self, y):
        """J-coordinates of an element of J."""
        return as_fp(y, self.p)[self.R.J.space.pivots]

    def mul(self, x, y):
        return self.R.K.mul(x, y)


def _context(R):
    ctx = R.__dict__.get("_family_context")
    if ctx is None:
        ctx = R.__dict__["_family_context"] = _Context(R)
    return ctx


def param_layout(kind, R):
    """Ordered ``(name, shape)`` pairs of the parameter maps of a family."""
    n, t, k = R.n, R.K.dim, R.J.dim
    if kind == INNER:
        return [("A", (n, n, t))]
    if kind == DIAGONAL:
        return [("d", (n, t))]
    if kind == RING:
        return [("theta", (t, t))]
    if kind == ALMOST_ANNIHILATOR:
        return [("alpha", (t, k)), ("beta", (t, k))]
    if kind == CENTRAL_LIE:
        out = [(f"alpha_{i}", (t, t)) for i in range(1, n)] + [(f"alpha_{n}", (t, k))]
        out += [(f"sigma_{i}", (t, t)) for i in range(1, n)] + [(f"sigma_{n}", (t, k))]
        return out + [("u", (t, k))]
    if kind == SPECIAL_I:
        return [("gamma", (t, t)), ("theta", (t, t))]
    if kind == SPECIAL_II:
        _need(n >= 4, kind, n)
        return [("alpha", (t, k)), ("beta", (t, k)), ("gamma", (t, k))]
    if kind == SPECIAL_III:
        _need(n == 3, kind, n)
        return [("alpha", (t, k)), ("gamma", (t, k))]
    if kind == CENTRAL_TRACE:
        return [("tau", (t, k))]
    raise ValueError(f"unknown family kind {kind!r}")


def _need(cond, kind, n):
    if not cond:
        raise WrongSize(f"family {kind} is not defined for n={n}")


def _flatten(params, layout):
    return np.concatenate([np.asarray(params.maps[name]).reshape(-1) for name, _ in layout])


def _unflatten(kind, vec, layout):
    maps, pos = {}, 0
    for name, shape in layout:
        size = int(np.prod(shape))
        maps[name] = vec[pos : pos + size].reshape(shape)
        pos += size
    return FamilyParams(kind, maps)


def zero_params(kind, R):
    return FamilyParams(kind, {name: np.zeros(shape, dtype=np.int64) for name, shape in param_layout(kind, R)})


def _conditions(params, R):
    """Yield ``(condition, witness, residual)``; every residual is linear in the maps."""
    ctx = _context(R)
    p, Kb, Jb = ctx.p, ctx.K_basis, ctx.J_basis
    m = {k: as_fp(v, p) for k, v in params.maps.items()}
    on_j = ctx.j_coords
    kind = params.kind

    def lands_in(name, W, label):
        yield f"{name}(.)⊂{label}", name, (W @ m[name]) % p

    if kind == INNER:
        A = m["A"]
        for i, j in R.positions:
            if i <= j:
                yield "A∈R", f"entry ({i},{j})", (ctx.W_J @ A[i - 1, j - 1]) % p
    elif kind == DIAGONAL:
        return
    elif kind == RING:
        th = m["theta"]
        for a, b in product(range(ctx.t), repeat=2):
            x1, x2 = Kb[a], Kb[b]
            res = th @ ctx.mul(x1, x2) - ctx.mul(th @ x1, x2) - ctx.mul(x1, th @ x2)
            yield "θ(x1x2)=θ(x1)x2+x1θ(x2)", f"{R.K.labels[a]},{R.K.labels[b]}", res % p
        for r, y in enumerate(Jb):
            yield "θ(J)⊂J", f"J basis {r}", (ctx.W_J @ (th @ y)) % p
    elif kind == ALMOST_ANNIHILATOR:
        al, be = m["alpha"], m["beta"]
        yield from lands_in("alpha", ctx.W_J, "J")
        yield from lands_in("beta", ctx.W_J, "J")
        for a, r in product(range(ctx.t), range(ctx.k)):
            x, y = Kb[a], Jb[r]
            yield "α(xy)=xα(y)", f"x={R.K.labels[a]}, y=J{r}", (al @ on_j(ctx.mul(x, y)) - ctx.mul(x, al[:, r])) % p
            yield "β(yx)=β(y)x", f"x={R.K.labels[a]}, y=J{r}", (be @ on_j(ctx.mul(y, x)) - ctx.mul(be[:, r], x)) % p
        for r, s in product(range(ctx.k), repeat=2):
            res = ctx.mul(al[:, r], Jb[s]) + ctx.mul(Jb[r], be[:, s])
            yield "α(y)z+yβ(z)=0", f"y=J{r}, z=J{s}", res % p
    elif kind == CENTRAL_LIE:
        n = R.n
        for i in range(1, n + 1):
            yield from lands_in(f"alpha_{i}", ctx.W_jc, "J∩C(K)")
            yield from lands_in(f"sigma_{i}", ctx.W_ann, "Ann_K(J)")
        yield from lands_in("u", ctx.W_ann, "Ann_K(J)")
        for i in range(1, n):
            for r, y in enumerate(Jb):
                yield "ς_i(J)=0", f"i={i}, y=J{r}", (m[f"sigma_{i}"] @ y) % p
                yield "α_i(J)=0", f"i={i}, y=J{r}", (m[f"alpha_{i}"] @ y) % p
        for r, s in product(range(ctx.k), repeat=2):
            yz = on_j(ctx.mul(Jb[r], Jb[s]))
            yield "ς_n(J²)=0", f"J{r}*J{s}", (m[f"sigma_{n}"] @ yz) % p
            yield "α_n(J²)=0", f"J{r}*J{s}", (m[f"alpha_{n}"] @ yz) % p
        for a, r in product(range(ctx.t), range(ctx.k)):
            x, y = Kb[a], Jb[r]
            res = m["u"] @ on_j(ctx.mul(x, y)) - m["u"] @ on_j(ctx.mul(y, x))
            yield "u(xy)=u(yx)", f"x={R.K.labels[a]}, y=J{r}", res % p
    elif kind == SPECIAL_I:
        g, th = m["gamma"], m["theta"]
        yield from lands_in("gamma", ctx.W_ann, "Ann_K(J)")
        yield from lands_in("theta", ctx.W_ann, "Ann_K(J)")
        for r, y in enumerate(Jb):
            yield "γ(J)=0", f"y=J{r}", (g @ y) % p
            yield "θ(J)=0", f"y=J{r}", (th @ y) % p
        for a, b in product(range(ctx.t), repeat=2):
            x1, x2 = Kb[a], Kb[b]
            w = f"{R.K.labels[a]},{R.K.labels[b]}"
            yield "γ(x1)x2=γ(x2)x1", w, (ctx.mul(g @ x1, x2) - ctx.mul(g @ x2, x1)) % p
            yield "x1θ(x2)=x2θ(x1)", w, (ctx.mul(x1, th @ x2) - ctx.mul(x2, th @ x1)) % p
    elif kind in (SPECIAL_II, SPECIAL_III):
        names = ["alpha", "beta", "gamma"] if kind == SPECIAL_II else ["alpha", "gamma"]
        for name in names:
            yield from lands_in(name, ctx.W_ann, "Ann_K(J)")
        for r, s in product(range(ctx.k), repeat=2):
            yz = on_j(ctx.mul(Jb[r], Jb[s]))
            for name in names:
                yield f"{name}(J²)=0", f"J{r}*J{s}", (m[name] @ yz) % p
        for a, r in product(range(ctx.t), range(ctx.k)):
            x, y = Kb[a], Jb[r]
            w = f"x={R.K.labels[a]}, y=J{r}"
            yx, xy = on_j(ctx.mul(y, x)), on_j(ctx.mul(x, y))
            al, ga = m["alpha"], m["gamma"]
            yield "α(yx)=xα(y)", w, (al @ yx - ctx.mul(x, al[:, r])) % p
            yield "γ(xy)=γ(y)x", w, (ga @ xy - ctx.mul(ga[:, r], x)) % p
            if kind == SPECIAL_II:
                be = m["beta"]
                yield "β(yx)=xβ(y)", w, (be @ yx - ctx.mul(x, be[:, r])) % p
                yield "β(xy)=β(y)x", w, (be @ xy - ctx.mul(be[:, r], x)) % p
    elif kind == CENTRAL_TRACE:
        yield from lands_in("tau", ctx.W_jc, "J∩C(K)")
        for a, r in product(range(ctx.t), range(ctx.k)):
            x, y = Kb[a], Jb[r]
            res = m["tau"] @ on_j(ctx.mul(x, y)) - m["tau"] @ on_j(ctx.mul(y, x))
            yield "τ(xy)=τ(yx)", f"x={R.K.labels[a]}, y=J{r}", res % p
    else:
        raise ValueError(f"unknown family kind {kind!r}")


def _check_shapes(params, R):
    layout = param_layout(params.kind, R)
    expected = dict(layout)
    if set(params.maps) != set(expected):
        return [Violation("parameter names", f"expected {sorted(expected)}, got {sorted(params.maps)}")]
    bad = [
        Violation("parameter shape", f"{name}: expected {shape}, got {np.shape(params.maps[name])}")
        for name, shape in layout
        if np.shape(params.maps[name]) != shape
    ]
    return bad


def validate_family_params(params: FamilyParams, R: RRing) -> list:
    """List of violated side conditions; empty when the parameters are admissible.

    Never raises for bad parameters, but an unknown kind or a kind that is
    undefined for this n raises.
    """
    bad = _check_shapes(params, R)
    if bad:
        return bad
    out = []
    seen = set()
    for name, witness, res in _conditions(params, R):
        if np.any(res) and (name, witness) not in seen:
            seen.add((name, witness))
            out.append(Violation(name, witness))
    return out


def family_parameter_space(kind, R: RRing) -> list:
    """Basis of the admissible parameters of a family, each as FamilyParams."""
    layout = param_layout(kind, R)
    size = sum(int(np.prod(s)) for _, s in layout)
    if size == 0:
        return []
    columns = []
    for c in range(size):
        unit = np.zeros(size, dtype=np.int64)
        unit[c] = 1
        res = [r.reshape(-1) for _, _, r in _conditions(_unflatten(kind, unit, layout), R)]
        columns.append(np.concatenate(res) if res else np.zeros(0, dtype=np.int64))
    system = np.array(columns, dtype=np.int64).T.reshape(-1, size)
    return [_unflatten(kind, v, layout) for v in kernel(system, R.p)]


# images of one basis element x e_{i,j} under each family


def _map_on(f, x, domain_pivots):
    return f @ x[domain_pivots] if domain_pivots is not None else f @ x


def _family_image_fn(params, R):
    p, n = R.p, R.n
    m = {k: as_fp(v, p) for k, v in params.maps.items()}
    jp = R.J.space.pivots
    kind = params.kind

    def on_j(name, x):
        return (m[name] @ x[jp]) % p

    if kind == INNER:
        A = m["A"]
        return lambda i, j, xa: R.bracket(A, xa)
    if kind == DIAGONAL:
        d = np.zeros((n, n, R.t), dtype=np.int64)
        for i in range(n):
            d[i, i] = m["d"][i]
        return lambda i, j, xa: R.bracket(d, xa)
    if kind == RING:
        th = m["theta"]
        return lambda i, j, xa: np.einsum("ab,ijb->ija", th, xa) % p

    def image(i, j, xa):
        x = xa[i - 1, j - 1]
        out = R.zeros()

        def put(s, t, v, sign=1):
            out[s - 1, t - 1] = (out[s - 1, t - 1] + sign * v) % p

        if kind == ALMOST_ANNIHILATOR:
            if i <= j and (i == 1 or j == n):
                a, b = on_j("alpha", x), on_j("beta", x)
                if (i, j) == (1, n):
                    put(1, 1, a)
                    put(n, n, b)
                elif j == n:
                    put(i, 1, a)
                else:
                    put(n, j, b)
        elif kind == CENTRAL_LIE:
            scalar = e_n1 = None
            if i == j + 1:
                scalar, e_n1 = m[f"alpha_{j}"] @ x, m[f"sigma_{j}"] @ x
            elif (i, j) == (1, n):
                scalar, e_n1 = on_j(f"alpha_{n}", x), on_j(f"sigma_{n}", x)
            elif i == j:
                e_n1 = on_j("u", x)
            if scalar is not None:
                for k in range(1, n + 1):
                    put(k, k, scalar)
            if e_n1 is not None:
                put(n, 1, e_n1)
        elif kind == SPECIAL_I:
            if (i, j) == (2, 1):
                put(n, 2, m["gamma"] @ x)
            if (i, j) == (n, n - 1):
                put(n - 1, 1, m["theta"] @ x)
        elif kind == SPECIAL_II:
            if i <= j:
                a, b, g = on_j("alpha", x), on_j("beta", x), on_j("gamma", x)
                if (i, j) == (1, n):
                    put(n - 1, 1, a)
                    put(n - 1, 2, b)
                    put(n, 2, g)
                elif (i, j) == (1, n - 1):
                    put(n, 1, a, -1)
                    put(n, 2, b, -1)
                elif (i, j) == (2, n):
                    put(n - 1, 1, b, -1)
                    put(n, 1, g, -1)
                elif (i, j) == (2, n - 1):
                    put(n, 1, b)
        elif kind == SPECIAL_III:
            if i <= j:
                a, g = on_j("alpha", x), on_j("gamma", x)
                if (i, j) == (1, 3):
                    put(2, 1, a)
                    put(3, 2, g)
                elif (i, j) == (1, 2):
                    put(3, 1, a, -1)
                elif (i, j) == (2, 3):
                    put(3, 1, g, -1)
        elif kind == CENTRAL_TRACE:
            if i == j:
                z = on_j("tau", x)
                for k in range(1, n + 1):
                    put(k, k, z)
        else:
            raise ValueError(f"unknown family kind {kind!r}")
        return out

    return image


def build_family(params: FamilyParams, R: RRing, validate=True) -> AdditiveEndo:
    """The additive endomorphism realizing a family for the given parameters."""
    param_layout(params.kind, R)  # raises WrongSize where the family is undefined
    if validate:
        bad = validate_family_params(params, R)
        if bad:
            raise InvalidParams(bad)
    image = _family_image_fn(params, R)
    images = np.stack([image(i, j, R.basis_arrays[u]) for u, (i, j, _) in enumerate(R.basis)])
    return AdditiveEndo.from_images(R, images)


# necessary support shape of every Lie derivation


def _support_allowed(R, i, j):
    """Positions allowed in the image of x e_{i,j} for the row/column shapes, or None."""
    n = R.n
    diag = {(k, k) for k in range(1, n + 1)}
    if i == j + 1:
        c = j
        allowed = {(c + 1, s) for s in range(1, n + 1)} | {(s, c) for s in range(1, n + 1)}
        allowed |= diag | {(n, 1)}
        if c == 1:
            allowed |= {(n, 2), (n, 3)}
        if c == n - 1:
            allowed |= {(n - 2, 1), (n - 1, 1)}
        return allowed
    if (i, j) == (1, n):
        allowed = {(1, s) for s in range(1, n + 1)} | {(s, n) for s in range(1, n + 1)}
        return allowed | diag | {(n - 1, 1), (n - 1, 2), (n, 1), (n, 2)}
    return None


def shape_violations(endo: AdditiveEndo) -> list:
    R = endo.ring
    p, n = R.p, R.n
    center_k = center(R.K)
    out = []
    for u, (i, j, x) in enumerate(R.basis):
        img = R.from_coords(endo.matrix[:, u])
        label = R.basis_label(u)
        allowed = _support_allowed(R, i, j)
        if allowed is not None:
            for s, t in zip(*np.nonzero(img.any(axis=2))):
                if (s + 1, t + 1) not in allowed:
                    out.append(Violation(f"support of image of x e{i},{j}", f"{label} hits ({s + 1},{t + 1})"))
        others = [k for k in range(1, n + 1) if k not in (i, j)]
        if not others:
            continue
        ref = img[others[0] - 1, others[0] - 1]
        for k in others[1:]:
            if not np.array_equal(img[k - 1, k - 1], ref):
                out.append(Violation("off-position diagonal entries agree", f"{label}: ({others[0]},{others[0]}) vs ({k},{k})"))
        if not center_k.contains(ref % p):
            out.append(Violation("off-position diagonal entries lie in C(K)", label))
    return out


def shape_check(endo: AdditiveEndo) -> bool:
    bad = shape_violations(endo)
    if bad:
        raise ShapeViolation("; ".join(str(v) for v in bad[:5]))
    return True
