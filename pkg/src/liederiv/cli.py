"""Command-line front end: ``liederiv {check,solve,decompose,families,demo}``.

Exit status: 0 ok, 1 config or parse error, 2 hypothesis violation,
3 theorem failure, 4 capacity exceeded.  Reports go to stdout or ``--out``;
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .config import DEFAULT_INSTANCES, load_config
from .decompose import decompose
from .errors import (
    CapacityExceeded,
    ConfigError,
    EvenCharacteristic,
    HypothesisViolation,
    IdealMismatch,
    LieDerivError,
    NoIdentity,
    NotAssociative,
    SizeTooSmall,
    TheoremFailure,
)
from .families import AdditiveEndo
from .solver import family_ranks, lie_module_space, main_theorem_check

EXIT_OK, EXIT_CONFIG, EXIT_HYPOTHESIS, EXIT_THEOREM, EXIT_CAPACITY = 0, 1, 2, 3, 4

_CONFIG_ERRORS = (ConfigError, EvenCharacteristic, NotAssociative, NoIdentity, SizeTooSmall, IdealMismatch)


def read_endo(path, R) -> AdditiveEndo:
    """Parse a ``p D`` header followed by D rows of D integers."""
    try:
        lines = [ln.split() for ln in Path(path).read_text().splitlines() if ln.strip()]
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    if not lines or len(lines[0]) != 2:
        raise ConfigError(f"{path}: line 1 must be the header 'p D'")
    try:
        rows = [[int(x) for x in ln] for ln in lines]
    except ValueError as exc:
        raise ConfigError(f"{path}: non-integer entry ({exc})") from None
    p, D = rows[0]
    if (p, D) != (R.p, R.D):
        raise ConfigError(f"{path}: header says p={p} D={D}, instance has p={R.p} D={R.D}")
    body = rows[1:]
    if len(body) != D or any(len(r) != D for r in body):
        raise ConfigError(f"{path}: expected {D} rows of {D} integers")
    return AdditiveEndo(R, np.array(body, dtype=np.int64))


def _emit(doc, args, text_lines):
    if args.format == "machine":
        out = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    else:
        out = "\n".join(text_lines) + "\n"
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


def _report_lines(doc):
    lines = []
    for key in sorted(doc):
        value = doc[key]
        if isinstance(value, dict):
            lines.append(f"{key}:")
            lines += [f"  {k}: {json.dumps(value[k])}" for k in sorted(value)]
        else:
            lines.append(f"{key}: {json.dumps(value)}")
    return lines


def _instance(args):
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.samples is not None:
        cfg.samples = args.samples
    if args.max_dim is not None:
        cfg.max_dim = args.max_dim
    return cfg, cfg.build()


def _run_check(cfg, R, with_trace):
    """Report document plus exit status for one instance."""
    try:
        report = main_theorem_check(R, cfg.samples, cfg.seed, cfg.max_dim, with_trace)
    except TheoremFailure as exc:
        doc = exc.report.to_dict() if exc.report is not None else {}
        doc["passed"] = False
        doc["failure"] = str(exc)
        if exc.witness is not None:
            doc["witness"] = exc.witness.matrix.tolist()
        return doc, EXIT_THEOREM
    doc = report.to_dict()
    doc["passed"] = True
    return doc, EXIT_OK


def cmd_check(args):
    cfg, R = _instance(args)
    doc, status = _run_check(cfg, R, args.with_trace)
    if status == EXIT_THEOREM:
        print(f"TheoremFailure: {doc['failure']}", file=sys.stderr)
        if "witness" in doc:
            sys.stderr.write(AdditiveEndo(R, np.array(doc["witness"])).to_text())
    lines = _report_lines({k: v for k, v in doc.items() if k != "witness"})
    if "witness" in doc:
        lines.append("witness:")
        lines += ["  " + " ".join(map(str, row)) for row in doc["witness"]]
    _emit(doc, args, lines)
    return status


def cmd_solve(args):
    cfg, R = _instance(args)
    space = lie_module_space(R, cfg.max_dim)
    basis = [v.reshape(R.D, R.D) for v in space.basis]
    doc = {"instance": R.describe(), "lie_module_rank": space.rank, "basis": [b.tolist() for b in basis]}
    lines = [f"instance: {json.dumps(R.describe(), sort_keys=True)}", f"lie_module_rank: {space.rank}"]
    for k, b in enumerate(basis):
        lines.append(f"# basis {k}")
        lines.append(AdditiveEndo(R, b).to_text().rstrip("\n"))
    _emit(doc, args, lines)
    return EXIT_OK


def cmd_decompose(args):
    cfg, R = _instance(args)
    endo = read_endo(args.endo, R)
    dec = decompose(endo, with_trace=args.with_trace)
    doc = dec.to_dict()
    lines = []
    for c in doc["components"]:
        state = "zero" if c["zero"] else "nonzero"
        lines.append(f"{c['stage']} ({c['kind']}, {state}): {json.dumps(c['maps'], sort_keys=True)}")
    for s in doc["stage_log"]:
        lines.append(f"check {s['stage']}: {'ok' if s['ok'] else '; '.join(s['violations'])}")
    lines.append(f"residual_zero: {json.dumps(doc['residual_zero'])}")
    _emit(doc, args, lines)
    return EXIT_OK if dec.residual_zero else EXIT_THEOREM


def cmd_families(args):
    cfg, R = _instance(args)
    ranks = family_ranks(R, args.with_trace)
    doc = {"instance": R.describe(), "family_ranks": ranks}
    _emit(doc, args, [f"{k}: {v}" for k, v in ranks.items()])
    return EXIT_OK


def cmd_demo(args):
    docs, status = {}, EXIT_OK
    lines = []
    for cfg in DEFAULT_INSTANCES:
        if args.seed is not None:
            cfg.seed = args.seed
        if args.samples is not None:
            cfg.samples = args.samples
        R = cfg.build()
        doc, code = _run_check(cfg, R, args.with_trace)
        doc.pop("witness", None)
        docs[cfg.name] = doc
        status = max(status, code)
        lines.append(
            f"{cfg.name}: D={doc['D']} kernel={doc['lie_module_rank']} span={doc['families_span_rank']} "
            f"residual={doc['max_residual_rank']} {'PASS' if doc['passed'] else 'FAIL'}"
        )
    _emit(docs, args, lines)
    return status


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report to this path instead of stdout")
    common.add_argument("--seed", type=int, help="override the config seed")
    common.add_argument("--samples", type=int, help="override the number of random kernel samples")
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--max-dim", type=int, help="refuse instances whose additive dimension exceeds this")
    common.add_argument("--with-trace", action="store_true", help="include the trace-type central family")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress and timings to stderr")

    parser = argparse.ArgumentParser(prog="liederiv", description="Lie derivations of R_n(K, J) over finite fields")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, extra in (
        ("check", cmd_check, ["config"]),
        ("solve", cmd_solve, ["config"]),
        ("decompose", cmd_decompose, ["config", "endo"]),
        ("families", cmd_families, ["config"]),
        ("demo", cmd_demo, []),
    ):
        sp = sub.add_parser(name, parents=[common])
        for arg in extra:
            sp.add_argument(arg)
        sp.set_defaults(func=fn)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr, format="%(message)s")
    try:
        return args.func(args)
    except LieDerivError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return _status_for(exc)


def _status_for(exc):
    if isinstance(exc, _CONFIG_ERRORS):
        return EXIT_CONFIG
    if isinstance(exc, HypothesisViolation):
        return EXIT_HYPOTHESIS
    if isinstance(exc, CapacityExceeded):
        return EXIT_CAPACITY
    return EXIT_THEOREM

if __name__ == "__main__":
    sys.exit(main())
