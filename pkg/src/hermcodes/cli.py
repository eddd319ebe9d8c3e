"""Command line front-end.

Every command prints a JSON report (``"schema": 1``) on stdout, or writes it
to ``--out``, and a one-line summary on stderr.  Exit codes: 0 success,
2 usage error, 3 budget exceeded, 4 verification failure (the failing report
is also written to ``--counterexample``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .codes import Budgets, BudgetExceeded, dual, format_code
from .improve import improved_report, minimal_improving_set
from .minwords import enumerate_supports, erratum_report, verify as verify_minwords
from .onepoint import CodeSpec, build_code, code_params
from .smallwords import soundness_sweep
from . import suites

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_FAIL = 0, 2, 3, 4


@dataclass
class RunConfig:
    command: str
    q: int
    m: int | None = None
    d: int | None = None
    a: int | None = None
    suite: str | None = None
    budgets: Budgets = dc_field(default_factory=Budgets)
    seed: int = 0
    samples: int = 200
    exhaustive: bool = False
    weights: tuple[int, ...] | None = None
    H_path: str | None = None
    emit_supports: str | None = None
    dual: bool = False
    out: str | None = None
    counterexample: str = "counterexample.json"


def dumps(report: dict) -> str:
    return json.dumps({"schema": SCHEMA, **report}, sort_keys=True, indent=2) + "\n"


def _spec(cfg: RunConfig) -> CodeSpec:
    if cfg.m is not None:
        return CodeSpec(cfg.q, m=cfg.m)
    if cfg.d is None or cfg.a is None:
        raise ValueError("give --m or both --d and --a")
    return CodeSpec(cfg.q, d=cfg.d, a=cfg.a)


def _need_da(cfg: RunConfig) -> tuple[int, int]:
    if cfg.d is None or cfg.a is None:
        raise ValueError("--d and --a are required")
    return cfg.d, cfg.a


def _read_points(path: str) -> list[int]:
    return sorted(int(t) for t in Path(path).read_text().split())


def _summary(report: dict) -> str:
    keys = [k for k in ("command", "suite", "q", "m", "d", "a") if k in report]
    head = " ".join(f"{k}={report[k]}" for k in keys)
    return f"{head} ok={report.get('ok', True)}"


def execute(cfg: RunConfig) -> dict:
    """Run one command and return its report (without the schema field)."""
    b = cfg.budgets
    if cfg.command == "params":
        spec = _spec(cfg)
        rep = code_params(cfg.q, spec.pole_order)
        return {"command": "params", **rep, "ok": True}
    if cfg.command == "matrix":
        C = build_code(_spec(cfg))
        if cfg.dual:
            C = dual(C)
        return {"command": "matrix", "q": cfg.q, "m": _spec(cfg).pole_order, "dual": cfg.dual,
                "n": C.n, "k": C.k, "text": format_code(C), "ok": True}
    if cfg.command == "minwords":
        d, a = _need_da(cfg)
        census = verify_minwords(cfg.q, d, a, exhaustive=cfg.exhaustive, budgets=b)
        rep = {"command": "minwords", **census.as_dict()}
        if cfg.emit_supports:
            fams = enumerate_supports(cfg.q, d, a, budgets=b)
            lines = sorted(S for v in fams.values() for S in v)
            Path(cfg.emit_supports).write_text("".join(" ".join(map(str, S)) + "\n" for S in lines))
            rep["supports_file"] = cfg.emit_supports
        return rep
    if cfg.command == "improve":
        d, a = _need_da(cfg)
        H = _read_points(cfg.H_path) if cfg.H_path else sorted(minimal_improving_set(cfg.q, d, a).H)
        rep = improved_report(cfg.q, d, a, H, budgets=b)
        rep["H"] = H
        return {"command": "improve", **rep}
    if cfg.command == "smallwords":
        d, a = _need_da(cfg)
        return {"command": "smallwords", **soundness_sweep(cfg.q, d, a, cfg.weights, budgets=b)}
    if cfg.command == "verify":
        s = cfg.suite
        if s == "table1":
            rep = suites.table1(cfg.q, b)
        elif s == "lines":
            rep = suites.lines(cfg.q)
        elif s == "parabolas":
            rep = suites.parabolas(cfg.q)
        elif s == "duality":
            rep = suites.duality(cfg.q)
        elif s == "isometry":
            rep = suites.isometry(cfg.q)
        elif s == "oracle":
            rep = suites.oracle(cfg.q, cfg.samples, cfg.seed, b)
        elif s == "erratum":
            d, a = (cfg.d or cfg.q, cfg.a if cfg.a is not None else 3)
            rep = {"suite": "erratum", **erratum_report(cfg.q, d, a)}
            rep["ok"] = rep["oracle_ok"] and bool(rep["supported"])
        else:
            raise ValueError(f"unknown suite {s!r}")
        return {"command": "verify", **rep}
    raise ValueError(f"unknown command {cfg.command!r}")


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Execute ``cfg``, write the outputs and return ``(exit code, report)``."""
    try:
        report = execute(cfg)
    except BudgetExceeded as exc:
        report = {"command": cfg.command, "q": cfg.q, "error": "budget", "message": str(exc), "ok": False}
        code = EXIT_BUDGET
    except (ValueError, FileNotFoundError) as exc:
        report = {"command": cfg.command, "q": cfg.q, "error": "usage", "message": str(exc), "ok": False}
        code = EXIT_USAGE
    else:
        code = EXIT_OK if report.get("ok", True) else EXIT_FAIL
    text = report.pop("text", None) if cfg.command == "matrix" else None
    if code == EXIT_FAIL:
        Path(cfg.counterexample).write_text(dumps(report))
    if text is not None:
        if cfg.out:
            Path(cfg.out).write_text(text)
            report["path"] = cfg.out
        else:
            sys.stdout.write(text)
            print(_summary(report), file=sys.stderr)
            return code, report
    if cfg.out and cfg.command != "matrix":
        Path(cfg.out).write_text(dumps(report))
    else:
        sys.stdout.write(dumps(report))
    print(_summary(report), file=sys.stderr)
    return code, report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, required=True)
    common.add_argument("--m", type=int)
    common.add_argument("--d", type=int)
    common.add_argument("--a", type=int)
    common.add_argument("--workers", type=int, help="worker processes (default: available CPUs)")
    common.add_argument("--max-codewords", type=int)
    common.add_argument("--max-subsets", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the report (or matrix) here instead of stdout")
    common.add_argument("--counterexample", default="counterexample.json")

    p = argparse.ArgumentParser(prog="hermcodes", description="Hermitian one-point codes and their duals.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("params", parents=[common], help="length, dimension, designed distance, dual index")
    mp = sub.add_parser("matrix", parents=[common], help="export a generator matrix")
    mp.add_argument("--dual", action="store_true", help="export the dual code instead")
    mw = sub.add_parser("minwords", parents=[common], help="minimum-weight census of C(d,a)^perp")
    mw.add_argument("--exhaustive", action="store_true")
    mw.add_argument("--emit-supports", metavar="PATH")
    ip = sub.add_parser("improve", parents=[common], help="improving subsets")
    ip.add_argument("--H", dest="H_path", metavar="PATH", help="file of removed point indices")
    sw = sub.add_parser("smallwords", help="small-weight support classification")
    swsub = sw.add_subparsers(dest="action", required=True)
    sweep = swsub.add_parser("sweep", parents=[common])
    sweep.add_argument("--w", type=int, nargs="+", dest="weights")
    vp = sub.add_parser("verify", parents=[common], help="verification suites")
    vp.add_argument("suite", choices=suites.SUITES)
    vp.add_argument("--samples", type=int, default=200)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    workers = ns.workers if ns.workers is not None else int(os.environ.get("HERMCODES_WORKERS", os.cpu_count() or 1))
    budgets = Budgets.from_env(max_codewords=ns.max_codewords, max_subsets=ns.max_subsets, workers=workers)
    return RunConfig(
        command=ns.command,
        q=ns.q,
        m=ns.m,
        d=ns.d,
        a=ns.a,
        suite=getattr(ns, "suite", None),
        budgets=budgets,
        seed=ns.seed,
        samples=getattr(ns, "samples", 200),
        exhaustive=getattr(ns, "exhaustive", False),
        weights=tuple(ns.weights) if getattr(ns, "weights", None) else None,
        H_path=getattr(ns, "H_path", None),
        emit_supports=getattr(ns, "emit_supports", None),
        dual=getattr(ns, "dual", False),
        out=ns.out,
        counterexample=ns.counterexample,
    )


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ValueError as exc:
        print(f"hermcodes: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)[0]


if __name__ == "__main__":
    sys.exit(main())
