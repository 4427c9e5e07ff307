"""Run every verification command and store the JSON reports under results/."""
import argparse
import json
import os
import sys

from z8dual.cli import RunConfig, run

RUNS = [
    RunConfig("verify-ring"),
    RunConfig("verify-claim", range="-6:6", sum_len=8, samples=10_000),
    RunConfig("enum-homs", window="-1:1"),
    RunConfig("ghost-demo", window="-1:1"),
    RunConfig("ghost-demo", window="-2:2"),
    RunConfig("sindi", dim=3),
    RunConfig("sindi", dim=4),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    worst = 0
    for cfg in RUNS:
        cfg.seed = args.seed
        code, report = run(cfg)
        tag = cfg.command + (f"_{cfg.window}" if cfg.command in ("enum-homs", "ghost-demo") else "")
        tag += f"_dim{cfg.dim}" if cfg.command == "sindi" else ""
        with open(os.path.join(args.out, f"{tag.replace(':', '_')}.json"), "w") as fh:
            json.dump(report, fh, indent=1, sort_keys=True)
        print(f"[{report['status']}] {tag}: {report['summary'][:100]}")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
