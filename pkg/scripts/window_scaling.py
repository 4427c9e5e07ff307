"""Size of the windowed ring, number of monomial words and hom count per window."""
import argparse
import time

from z8dual.ecvector import Window
from z8dual.homs import enumerate_homs
from z8dual.subring import build_D


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-radius", type=int, default=3)
    ap.add_argument("--hom-radius", type=int, default=2, help="enumerate homs up to this radius")
    args = ap.parse_args()
    print(f"{'window':>8} {'words':>6} {'log2|D_W|':>9} {'homs':>7} {'seconds':>8}")
    for r in range(args.max_radius + 1):
        t0 = time.perf_counter()
        w = Window(-r, r)
        ring = build_D(w, materialize=False)
        homs = len(enumerate_homs(ring)) if r <= args.hom_radius else "-"
        print(f"{str(w):>8} {len(ring.words):>6} {ring.size.bit_length() - 1:>9} {homs:>7} "
              f"{time.perf_counter() - t0:>8.2f}")


if __name__ == "__main__":
    main()
