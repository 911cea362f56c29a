"""Instance configuration files.

A config is a YAML mapping::

    p: 3
    n: 4
    algebra: {kind: dual}        # prime | dual | upper2 | table
    ideal: [[0, 1]]              # generator coordinate vectors, closed to an ideal
    seed: 7
    samples: 100
    max_dim: 64

The ``table`` kind additionally takes ``basis``, ``one`` and ``products``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from .algebra import ideal_closure, make_algebra
from .errors import ConfigError
from .matrix_ring import RRing
from .solver import DEFAULT_MAX_DIM

__all__ = ["InstanceConfig", "load_config", "parse_config", "DEFAULT_INSTANCES"]

_KNOWN = {"p", "n", "algebra", "ideal", "seed", "samples", "max_dim", "name"}


@dataclass
class InstanceConfig:
    p: int
    n: int
    algebra: dict
    ideal: list = field(default_factory=list)
    seed: int = 0
    samples: int = 100
    max_dim: int = DEFAULT_MAX_DIM
    name: str = ""

    def build(self) -> RRing:
        K = make_algebra({**self.algebra, "p": self.p})
        gens = np.array(self.ideal, dtype=np.int64).reshape(-1, K.dim) if self.ideal else np.zeros((0, K.dim), dtype=np.int64)
        return RRing(K, ideal_closure(K, gens), self.n)


def _int_field(data, key, default=None, minimum=None):
    if key not in data:
        if default is None:
            raise ConfigError(f"missing required field '{key}'")
        return default
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"field '{key}' must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(f"field '{key}' must be at least {minimum}, got {value}")
    return value


def parse_config(text: str, name="") -> InstanceConfig:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" at line {mark.line + 1}" if mark else ""
        raise ConfigError(f"malformed config{where}: {getattr(exc, 'problem', exc)}") from None
    if not isinstance(data, dict):
        raise ConfigError("config must be a key-value mapping")
    unknown = sorted(set(data) - _KNOWN)
    if unknown:
        raise ConfigError(f"unknown field(s): {', '.join(unknown)}")
    algebra = data.get("algebra", {"kind": "prime"})
    if isinstance(algebra, str):
        algebra = {"kind": algebra}
    if not isinstance(algebra, dict):
        raise ConfigError("field 'algebra' must be a kind name or a mapping")
    ideal = data.get("ideal") or []
    if not isinstance(ideal, list) or not all(isinstance(g, list) and all(isinstance(c, int) for c in g) for g in ideal):
        raise ConfigError("field 'ideal' must be a list of integer coordinate vectors")
    return InstanceConfig(
        p=_int_field(data, "p"),
        n=_int_field(data, "n"),
        algebra=algebra,
        ideal=ideal,
        seed=_int_field(data, "seed", 0, minimum=0),
        samples=_int_field(data, "samples", 100, minimum=0),
        max_dim=_int_field(data, "max_dim", DEFAULT_MAX_DIM, minimum=1),
        name=str(data.get("name", name)),
    )


def load_config(path) -> InstanceConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    return parse_config(text, name=path.stem)


DEFAULT_INSTANCES = (
    InstanceConfig(p=3, n=3, algebra={"kind": "prime"}, name="n3_f3", seed=7),
    InstanceConfig(p=3, n=3, algebra={"kind": "dual"}, ideal=[[0, 1]], name="n3_dual", seed=7),
    InstanceConfig(p=3, n=4, algebra={"kind": "dual"}, ideal=[[0, 1]], name="n4_dual", seed=7),
    InstanceConfig(p=3, n=4, algebra={"kind": "upper2"}, ideal=[[0, 1, 0]], name="n4_t2", seed=7),
    InstanceConfig(p=5, n=5, algebra={"kind": "prime"}, name="n5_f5", seed=7),
)
