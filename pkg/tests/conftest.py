import json
from pathlib import Path

import pytest

from liederiv.config import DEFAULT_INSTANCES

INSTANCE_NAMES = [c.name for c in DEFAULT_INSTANCES]
_RINGS = {}
_OUTCOMES = []


def ring_for(name):
    if name not in _RINGS:
        cfg = next(c for c in DEFAULT_INSTANCES if c.name == name)
        _RINGS[name] = cfg.build()
    return _RINGS[name]


@pytest.fixture(params=INSTANCE_NAMES)
def instance(request):
    return request.param, ring_for(request.param)


@pytest.fixture
def record():
    """Record one acceptance outcome; the summary prints one line per call."""
    entries = []

    def _record(label):
        entry = [label, False]
        entries.append(entry)
        _OUTCOMES.append(entry)
        return entry

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok in _OUTCOMES:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}")


@pytest.fixture(scope="session")
def golden():
    return json.loads((Path(__file__).parent / "golden" / "ranks.json").read_text())
