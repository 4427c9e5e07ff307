"""Long randomized search for a set with the 3-flat property that is not a
quadratic solution set.  Checkpoints to a state file and resumes from it."""
import argparse
import json

from z8dual.quad_f2 import sindi_search


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dim", type=int, default=5)
    ap.add_argument("--budget", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--state", default="sindi_state.json")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    res = sindi_search(args.dim, "random", args.budget, args.seed, args.state, args.workers)
    print(json.dumps(res.to_json(), indent=1))


if __name__ == "__main__":
    main()
