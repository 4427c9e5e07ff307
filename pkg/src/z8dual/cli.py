"""Command-line entry point: ``python -m z8dual <command>``."""
from __future__ import annotations

import argparse
import json
import platform
import sys
from dataclasses import asdict, dataclass
from typing import List, Optional

import numpy as np

from . import __version__
from .certificates import check_file
from .ecvector import Window, verify_structure
from .ghost_claim import ClaimFailure, verify_claim
from .ghost_map import non_evaluation_report
from .homs import HomBudgetExceeded, enumerate_homs, verify_classification
from .quad_f2 import sindi_search
from .ring_core import IdentityFailure, verify_ring_identities
from .subring import BudgetExceeded, build_D

SCHEMA = "z8dual.report/1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    window: Optional[str] = None
    range: str = "-6:6"
    sum_len: int = 8
    samples: int = 10_000
    budget: Optional[int] = None
    seed: int = 0
    dim: int = 4
    mode: str = "exhaustive"
    resume: Optional[str] = None
    json: bool = False
    cert_out: Optional[str] = None
    workers: int = 1
    path: Optional[str] = None

    def validate(self) -> None:
        if self.budget is not None and self.budget <= 0:
            raise ValueError("budget must be positive")
        if self.workers <= 0:
            raise ValueError("workers must be positive")
        if self.samples < 0 or self.sum_len <= 0:
            raise ValueError("samples must be non-negative and sum-len positive")
        for text in (self.window, self.range):
            if text is not None:
                Window.parse(text)


def _split_timing(obj, path="", timing=None):
    """Move every ``seconds`` entry into one flat timing map."""
    timing = {} if timing is None else timing
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            if k == "seconds":
                timing[path or "total"] = v
            else:
                out[k] = _split_timing(v, f"{path}.{k}" if path else k, timing)[0]
        return out, timing
    if isinstance(obj, list):
        return [_split_timing(v, f"{path}[{i}]", timing)[0] for i, v in enumerate(obj)], timing
    return obj, timing


def _versions() -> dict:
    return {"z8dual": __version__, "python": platform.python_version(), "numpy": np.__version__}


def _verify_ring(cfg: RunConfig):
    report = verify_ring_identities()
    report["structure"] = verify_structure()
    return EXIT_OK, report, "ring identities and generator structure verified"


def _verify_claim(cfg: RunConfig):
    w = Window.parse(cfg.range)
    report = verify_claim(w.lo, w.hi, cfg.sum_len, cfg.samples, cfg.seed)
    if cfg.cert_out:
        with open(cfg.cert_out, "w") as fh:
            json.dump([c["certificate"] for c in report["witnesses"]], fh, indent=1)
    return EXIT_OK, report, "parity claim verified: ghost excluded, punctured ghosts included"


def _enum_homs(cfg: RunConfig):
    w = Window.parse(cfg.window or "-1:1")
    ring = build_D(w, materialize=False)
    homs = enumerate_homs(ring, cfg.budget or 10_000_000)
    report = verify_classification(ring, homs)
    report["generators"] = ring.names
    report["ring_order"] = ring.size
    return EXIT_OK, report, f"{len(homs)} homomorphisms on {w}, all classified"


def _ghost_demo(cfg: RunConfig):
    w = Window.parse(cfg.window or "-1:1")
    rep = non_evaluation_report(w, seed=cfg.seed, hom_budget=cfg.budget or 10_000_000,
                                claim_samples=cfg.samples)
    data = rep.to_json()
    code = EXIT_OK if rep.verdict else EXIT_FAIL
    return code, data, f"verdict {rep.verdict}: {rep.conclusion}"


def _sindi(cfg: RunConfig):
    res = sindi_search(cfg.dim, cfg.mode, cfg.budget or 1_000_000, cfg.seed, cfg.resume, cfg.workers)
    data = res.to_json()
    if cfg.cert_out and res.certificate:
        with open(cfg.cert_out, "w") as fh:
            json.dump(res.certificate, fh, indent=1)
    if res.status == "found":
        return EXIT_OK, data, f"counterexample at dim {cfg.dim}: mask {data['counterexample']}"
    if res.status == "absent":
        return EXIT_OK, data, f"no counterexample at dim {cfg.dim} (definitive)"
    return EXIT_BUDGET, data, f"budget exhausted at dim {cfg.dim} without a counterexample"


def _check_cert(cfg: RunConfig):
    ok, why = check_file(cfg.path)
    return (EXIT_OK if ok else EXIT_FAIL), {"path": cfg.path, "valid": ok, "reason": why}, \
        f"certificate {'accepted' if ok else 'rejected'}: {why}"


COMMANDS = {
    "verify-ring": _verify_ring,
    "verify-claim": _verify_claim,
    "enum-homs": _enum_homs,
    "ghost-demo": _ghost_demo,
    "sindi": _sindi,
    "check-cert": _check_cert,
}


def run(cfg: RunConfig):
    """Returns ``(exit status, report dict, one-line summary)``."""
    cfg.validate()
    try:
        code, body, summary = COMMANDS[cfg.command](cfg)
    except (BudgetExceeded, HomBudgetExceeded) as exc:
        code, body, summary = EXIT_BUDGET, {"error": str(exc)}, f"budget exhausted: {exc}"
    except (AssertionError, IdentityFailure, ClaimFailure) as exc:
        code, body, summary = EXIT_FAIL, {"error": str(exc)}, f"FAILED: {exc}"
    body, timing = _split_timing(body)
    report = {"schema": SCHEMA, "command": cfg.command, "config": asdict(cfg), "versions": _versions(),
              "status": "pass" if code == EXIT_OK else ("budget" if code == EXIT_BUDGET else "fail"),
              "summary": summary, "result": body, "timing": timing}
    return code, report


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="z8dual", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the full JSON report")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--cert-out", dest="cert_out", help="write certificates to this path")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("verify-ring", parents=[common])
    c = sub.add_parser("verify-claim", parents=[common])
    c.add_argument("--range", default="-6:6")
    c.add_argument("--sum-len", dest="sum_len", type=int, default=8)
    c.add_argument("--samples", type=int, default=10_000)
    for name in ("enum-homs", "ghost-demo"):
        c = sub.add_parser(name, parents=[common])
        c.add_argument("--window", default="-1:1")
        c.add_argument("--budget", type=int)
        if name == "ghost-demo":
            c.add_argument("--samples", type=int, default=10_000)
    c = sub.add_parser("sindi", parents=[common])
    c.add_argument("--dim", type=int, default=4)
    c.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    c.add_argument("--budget", type=int)
    c.add_argument("--resume")
    c = sub.add_parser("check-cert", parents=[common])
    c.add_argument("path")
    return p


def _join_negative_values(argv: List[str]) -> List[str]:
    """Let ``--window -2:2`` through argparse, which reads ``-2:2`` as a flag."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] in ("--window", "--range") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    cfg = RunConfig(**vars(args))
    try:
        code, report = run(cfg)
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"z8dual: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.json:
        print(json.dumps(report, indent=1, sort_keys=True))
    else:
        print(f"[{report['status']}] {cfg.command}: {report['summary']}")
    return code
