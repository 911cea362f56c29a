import json
from pathlib import Path

import numpy as np
import pytest

from liederiv.cli import main, read_endo
from liederiv.config import parse_config
from liederiv.errors import ConfigError

ROOT = Path(__file__).resolve().parent.parent
CONFIGS = ROOT / "configs"
GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_check_matches_golden(capsys, tmp_path):
    out = tmp_path / "report.json"
    code, _, _ = run(capsys, "check", CONFIGS / "n3_f3.cfg", "--format", "machine", "--samples", 10, "--out", out)
    assert code == 0
    assert out.read_text() == (GOLDEN / "check_n3_f3.json").read_text()


def test_families_matches_golden(capsys):
    code, out, _ = run(capsys, "families", CONFIGS / "n4_dual.cfg")
    assert code == 0 and out == (GOLDEN / "families_n4_dual.txt").read_text()


def test_check_with_trace_passes_on_dual(capsys):
    code, out, _ = run(capsys, "check", CONFIGS / "n4_dual.cfg", "--samples", 5, "--with-trace", "--format", "machine")
    doc = json.loads(out)
    assert code == 0 and doc["span_equal"] and doc["lie_module_rank"] == 38


def test_check_failure_dumps_witness(capsys):
    code, out, err = run(capsys, "check", CONFIGS / "n3_dual.cfg", "--samples", 2, "--format", "machine")
    assert code == 3
    assert "TheoremFailure" in err
    doc = json.loads(out)
    assert not doc["passed"] and np.array(doc["witness"]).shape == (12, 12)


def test_even_characteristic(capsys):
    code, _, err = run(capsys, "check", CONFIGS / "n4_f2.cfg")
    assert code == 1 and "EvenCharacteristic" in err


def test_hypothesis_exit(capsys):
    code, _, err = run(capsys, "check", CONFIGS / "n3_t2.cfg")
    assert code == 2 and "HypothesisViolation" in err


def test_capacity_exit(capsys):
    code, _, err = run(capsys, "solve", CONFIGS / "n4_t2.cfg", "--max-dim", 20)
    assert code == 4 and "CapacityExceeded" in err


def test_missing_config(capsys, tmp_path):
    code, _, err = run(capsys, "check", tmp_path / "absent.cfg")
    assert code == 1 and "ConfigError" in err


def test_bad_arguments(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 1


def test_solve_lists_basis(capsys):
    code, out, _ = run(capsys, "solve", CONFIGS / "n3_f3.cfg", "--format", "machine")
    doc = json.loads(out)
    assert code == 0 and doc["lie_module_rank"] == 6 and len(doc["basis"]) == 6


def test_decompose_zero(capsys, tmp_path):
    endo = tmp_path / "zero.endo"
    endo.write_text("3 3\n0 0 0\n0 0 0\n0 0 0\n")
    code, out, _ = run(capsys, "decompose", CONFIGS / "n3_f3.cfg", endo)
    assert code == 0 and "residual_zero: true" in out
    assert "nonzero" not in out


def test_decompose_rejects_non_lie(capsys, tmp_path):
    endo = tmp_path / "id.endo"
    endo.write_text("3 3\n1 0 0\n0 1 0\n0 0 1\n")
    code, _, err = run(capsys, "decompose", CONFIGS / "n3_f3.cfg", endo)
    assert code == 2 and "not a Lie derivation" in err


def test_decompose_solver_output_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "solve", CONFIGS / "n3_dual.cfg", "--format", "machine")
    basis = json.loads(out)["basis"]
    endo = tmp_path / "b.endo"
    endo.write_text("3 12\n" + "\n".join(" ".join(map(str, r)) for r in basis[0]) + "\n")
    code, out, _ = run(capsys, "decompose", CONFIGS / "n3_dual.cfg", endo, "--with-trace", "--format", "machine")
    assert code == 0 and json.loads(out)["residual_zero"]


@pytest.mark.parametrize(
    "text, message",
    [
        ("p: 3\nn: [\n", "line"),
        ("p: 3\n", "'n'"),
        ("p: 3\nn: 3\ncolour: red\n", "colour"),
        ("p: three\nn: 3\n", "'p'"),
        ("p: 3\nn: 3\nideal: [[a]]\n", "ideal"),
        ("- 1\n", "mapping"),
    ],
)
def test_config_diagnostics(text, message):
    with pytest.raises(ConfigError, match=message):
        parse_config(text)


def test_table_config_matches_builtin():
    a = parse_config((CONFIGS / "n3_dual_table.cfg").read_text()).build()
    b = parse_config((CONFIGS / "n3_dual.cfg").read_text()).build()
    assert np.array_equal(a.bracket_table, b.bracket_table)


def test_endo_file_errors(tmp_path):
    R = parse_config((CONFIGS / "n3_f3.cfg").read_text()).build()
    path = tmp_path / "e.endo"
    for text in ("", "3\n", "3 4\n", "3 3\n0 0\n0 0 0\n0 0 0\n", "3 3\nx 0 0\n0 0 0\n0 0 0\n"):
        path.write_text(text)
        with pytest.raises(ConfigError):
            read_endo(path, R)
