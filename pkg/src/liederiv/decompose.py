"""Split a Lie derivation of R into the canonical families.

The pipeline peels components off a running residual in a fixed order:

    diagonal, inner A, inner B, central Lie, [central trace], ring, special I,
    [special III when n = 3], inner C, almost annihilator,
    [special II when n >= 4]

Every component is read off named entries of the current residual applied
to basis-scaled matrix units.  After each stage the support pattern that
the residual is expected to have is checked and logged; these checks never
steer the pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import HypothesisViolation, InternalExtractionError
from .families import (
    ALMOST_ANNIHILATOR,
    CENTRAL_LIE,
    CENTRAL_TRACE,
    DIAGONAL,
    INNER,
    RING,
    SPECIAL_I,
    SPECIAL_II,
    SPECIAL_III,
    AdditiveEndo,
    FamilyParams,
    Violation,
    build_family,
    is_lie_derivation,
    validate_family_params,
)

__all__ = ["Component", "StageResult", "Decomposition", "STAGES", "decompose", "assert_stage_pattern"]

STAGES = (
    "diagonal",
    "inner_A",
    "inner_B",
    "central_lie",
    "central_trace",
    "ring",
    "special_i",
    "special_iii",
    "inner_C",
    "almost_annihilator",
    "special_ii",
)


@dataclass
class Component:
    stage: str
    params: FamilyParams
    endo: AdditiveEndo

    def to_dict(self):
        out = self.params.to_dict()
        out["stage"] = self.stage
        out["zero"] = self.endo.is_zero()
        return out


@dataclass
class StageResult:
    stage: str
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def to_dict(self):
        return {"stage": self.stage, "ok": self.ok, "violations": [str(v) for v in self.violations]}


@dataclass
class Decomposition:
    source: AdditiveEndo
    components: list
    residual: AdditiveEndo
    stage_log: list

    @property
    def residual_zero(self):
        return self.residual.is_zero()

    def total(self):
        acc = AdditiveEndo.zero(self.source.ring)
        for c in self.components:
            acc = acc + c.endo
        return acc

    def to_dict(self):
        return {
            "components": [c.to_dict() for c in self.components],
            "residual_zero": self.residual_zero,
            "residual_nonzero_entries": int(np.count_nonzero(self.residual.matrix)),
            "stage_log": [s.to_dict() for s in self.stage_log],
        }


def _unit_images(psi, i, j):
    """Images of the basis of I_{i,j} placed at (i, j), as ``(m, n, n, t)``."""
    R = psi.ring
    return R.from_coords(psi.matrix[:, R.slot(i, j)].T)


def _nonzero(v):
    return bool(np.asarray(v).any())


def assert_stage_pattern(stage, psi: AdditiveEndo) -> list:
    """Violations of the support pattern expected after ``stage``; empty when fine."""
    R = psi.ring
    n = R.n
    out = []

    def e_unit_image(i, j):
        return psi.apply(R.unit(i, j))

    def flag(cond, where, what):
        if cond:
            out.append(Violation(f"{stage}: {what}", where))

    if stage == "diagonal":
        for i in range(1, n):
            img = e_unit_image(i + 1, i)
            flag(_nonzero(img[i, i - 1]), f"e{i + 1},{i}", "zero (i+1,i) entry")
    elif stage == "inner_B":
        for i in range(1, n):
            img = e_unit_image(i + 1, i)
            extra = {(n, 1)}
            if i == 1:
                extra.add((n, 2))
            if i == n - 1:
                extra.add((n - 1, 1))
            for s, t in zip(*np.nonzero(img.any(axis=2))):
                s, t = int(s) + 1, int(t) + 1
                flag(s != t and (s, t) not in extra, f"e{i + 1},{i} at ({s},{t})", "support on diagonal and corner entries")
    elif stage == "central_lie":
        for i in range(1, n):
            imgs = _unit_images(psi, i + 1, i)
            for k in range(1, n + 1):
                if k not in (i, i + 1):
                    flag(_nonzero(imgs[:, k - 1, k - 1]), f"xe{i + 1},{i} at ({k},{k})", "diagonal entries cleared")
        imgs = _unit_images(psi, 1, n)
        for m in range(2, n):
            flag(_nonzero(imgs[:, m - 1, m - 1]), f"ye1,{n} at ({m},{m})", "diagonal entries cleared")
    elif stage == "central_trace":
        for j in range(1, n + 1):
            imgs = _unit_images(psi, j, j)
            for k in range(1, n + 1):
                if k != j:
                    flag(_nonzero(imgs[:, k - 1, k - 1]), f"ye{j},{j} at ({k},{k})", "diagonal entries cleared")
    elif stage == "ring":
        for i, j in R.positions:
            imgs = _unit_images(psi, i, j)
            flag(_nonzero(imgs[:, i - 1, j - 1]), f"xe{i},{j}", "own-position entry cleared")
    elif stage == "special_i":
        flag(_nonzero(_unit_images(psi, 2, 1)[:, n - 1, 1]), "xe2,1", f"({n},2) entry cleared")
        flag(_nonzero(_unit_images(psi, n, n - 1)[:, n - 2, 0]), f"xe{n},{n - 1}", f"({n - 1},1) entry cleared")
    elif stage == "special_iii":
        imgs = _unit_images(psi, 1, 3)
        flag(_nonzero(imgs[:, 1, 0]) or _nonzero(imgs[:, 2, 1]), "ye1,3", "(2,1) and (3,2) entries cleared")
    elif stage == "inner_C":
        for i, j in R.positions:
            if i > j:
                flag(_nonzero(_unit_images(psi, i, j)), f"xe{i},{j}", "lower positions map to zero")
    elif stage == "almost_annihilator":
        for i in range(1, n + 1):
            flag(_nonzero(_unit_images(psi, 1, i)[:, n - 1, i - 1]), f"ye1,{i}", f"({n},{i}) entry cleared")
            flag(_nonzero(_unit_images(psi, i, n)[:, i - 1, 0]), f"ye{i},{n}", f"({i},1) entry cleared")
    elif stage in ("special_ii", "final"):
        imgs = _unit_images(psi, 1, 1)
        flag(_nonzero(imgs[:, 0, 1]) or _nonzero(imgs[:, n - 1, 1]), "ye1,1", "(1,2) and (n,2) entries cleared")
        flag(not psi.is_zero(), "residual", "zero residual")
    return out


class _Pipeline:
    def __init__(self, delta):
        self.R = delta.ring
        self.psi = AdditiveEndo(self.R, delta.matrix.copy())
        self.components = []
        self.log = []

    def comp(self, i, j, s, t):
        return self.psi.component(i, j, s, t)

    def at_one(self, i, j, s, t):
        return self.psi.component_at(i, j, s, t, self.R.K.one)

    def peel(self, stage, kind, maps):
        params = FamilyParams(kind, maps)
        bad = validate_family_params(params, self.R)
        if bad:
            raise InternalExtractionError(f"stage {stage}: extracted {kind} parameters violate " + "; ".join(map(str, bad)))
        endo = build_family(params, self.R, validate=False)
        self.components.append(Component(stage, params, endo))
        self.psi = self.psi - endo

    def record(self, stage, extra=()):
        self.log.append(StageResult(stage, list(extra) + assert_stage_pattern(stage, self.psi)))


def _agree(stage, what, mats):
    ref = mats[0]
    return [Violation(f"{stage}: {what}", f"variant {k}") for k, m in enumerate(mats[1:], 1) if not np.array_equal(m, ref)]


def decompose(delta: AdditiveEndo, check_hypotheses=True, with_trace=False) -> Decomposition:
    """Run the canonical pipeline; ``source == sum(components) + residual`` always.

    With ``with_trace`` an extra stage after the central Lie one removes the
    trace-type central part, read off the (2,2) entry of the image of y e_{1,1}.
    """
    R = delta.ring
    n, t, p = R.n, R.t, R.p
    if check_hypotheses:
        lie = is_lie_derivation(delta)
        if not lie:
            raise HypothesisViolation(f"not a Lie derivation: fails on pair {lie.pair}")
        if n == 3 and not R.K.is_commutative:
            raise HypothesisViolation("n = 3 requires a commutative base algebra")
    pl = _Pipeline(delta)

    # diagonal part: d_1 = 0, d_{i+1} = sum_{k<=i} (k+1,k) entry of psi(e_{k+1,k})
    d = np.zeros((n, t), dtype=np.int64)
    for i in range(1, n):
        d[i] = (d[i - 1] + pl.at_one(i + 1, i, i + 1, i)) % p
    pl.peel("diagonal", DIAGONAL, {"d": d})
    pl.record("diagonal")

    A = np.zeros((n, n, t), dtype=np.int64)
    for i in range(2, n):
        A[i - 1, 0] = -pl.at_one(i + 1, i, i + 1, 1) % p
    B = np.zeros((n, n, t), dtype=np.int64)
    for i in range(1, n):
        for v in range(1, n + 1):
            if v not in (i, i + 1):
                B[v - 1, i] = pl.at_one(i + 1, i, v, i)
    pl.peel("inner_A", INNER, {"A": A})
    pl.record("inner_A")
    pl.peel("inner_B", INNER, {"A": B})
    pl.record("inner_B")

    # central Lie part
    maps, checks = {}, []
    for i in range(1, n):
        ks = [k for k in range(1, n + 1) if k not in (i, i + 1)]
        variants = [pl.comp(i + 1, i, k, k) for k in ks]
        checks += _agree("central_lie", f"alpha_{i} independent of diagonal slot", variants)
        maps[f"alpha_{i}"] = variants[0]
        maps[f"sigma_{i}"] = pl.comp(i + 1, i, n, 1)
    variants = [pl.comp(1, n, m, m) for m in range(2, n)]
    checks += _agree("central_lie", f"alpha_{n} independent of diagonal slot", variants)
    maps[f"alpha_{n}"] = variants[0]
    maps[f"sigma_{n}"] = pl.comp(1, n, n, 1)
    variants = [pl.comp(i, i, n, 1) for i in range(2, n)]
    checks += _agree("central_lie", "u independent of diagonal position", variants)
    maps["u"] = variants[0]
    pl.peel("central_lie", CENTRAL_LIE, maps)
    pl.record("central_lie", checks)

    if with_trace:
        pl.peel("central_trace", CENTRAL_TRACE, {"tau": pl.comp(1, 1, 2, 2)})
        pl.record("central_trace")

    pl.peel("ring", RING, {"theta": pl.comp(2, 1, 2, 1)})
    pl.record("ring")

    pl.peel("special_i", SPECIAL_I, {"gamma": pl.comp(2, 1, n, 2), "theta": pl.comp(n, n - 1, n - 1, 1)})
    pl.record("special_i")

    if n == 3:
        pl.peel("special_iii", SPECIAL_III, {"alpha": pl.comp(1, 3, 2, 1), "gamma": pl.comp(1, 3, 3, 2)})
        pl.record("special_iii")

    C = np.zeros((n, n, t), dtype=np.int64)
    for k in range(1, n):
        C[k - 1, k] = pl.at_one(k + 1, k, k, k)
    pl.peel("inner_C", INNER, {"A": C})
    pl.record("inner_C")

    pl.peel("almost_annihilator", ALMOST_ANNIHILATOR, {"alpha": pl.comp(1, n, 1, 1), "beta": pl.comp(1, n, n, n)})
    pl.record("almost_annihilator")

    if n >= 4:
        pl.peel(
            "special_ii",
            SPECIAL_II,
            {"alpha": pl.comp(1, n, n - 1, 1), "beta": pl.comp(1, n, n - 1, 2), "gamma": pl.comp(1, n, n, 2)},
        )
        pl.record("special_ii")
    else:
        pl.record("final")

    return Decomposition(delta, pl.components, pl.psi, pl.log)
