#!/usr/bin/env python3
"""Evaluate the extremal bounds over parameter grids and spot-check witnesses.

Three sections: the complete-graph division-count lower bound over an
(n, c) grid, the two-sided chromatic bounds for subdivided complete d-ary
trees over random (d, h, k) triples, and a batch of pigeonhole witness
extractions confirming the complete-graph bound constructively.
"""

import argparse
import random
import sys

from afsub.bounds import (
    dary_two_sided,
    find_anagram_pigeonhole,
    kn_lower_bound,
    seeded_complete_subdivision_colouring,
)
from afsub.verifier import revalidate


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--sweep-points", type=int, default=1000)
    parser.add_argument("--witness-runs", type=int, default=20)
    args = parser.parse_args()

    print("minimum division count for an anagram-free c-colouring of K_n:")
    cs = (2, 3, 4, 6)
    print(f"{'n':>6} " + " ".join(f"c={c:>2}      " for c in cs))
    for n in (10, 30, 100, 300, 1000, 10_000):
        cells = " ".join(f"{kn_lower_bound(n, c):>9.3f} " for c in cs if n >= c)
        print(f"{n:>6} {cells}")

    print()
    rng = random.Random(args.seed)
    worst_ratio = 0.0
    violations = 0
    for _ in range(args.sweep_points):
        d = rng.randint(2, 40)
        h = rng.randint(1, 500)
        k = rng.randint(2 * d + 1, 10_000)
        lower, upper = dary_two_sided(d, h, k)
        violations += lower > upper
        worst_ratio = max(worst_ratio, lower / upper)
    print(f"two-sided d-ary sweep over {args.sweep_points} random (d, h, k):")
    print(f"  lower > upper violations: {violations}")
    print(f"  largest lower/upper ratio: {worst_ratio:.4f}")

    print()
    ok = 0
    for seed in range(args.witness_runs):
        inst = seeded_complete_subdivision_colouring(100, 2, 3, seed)
        ce = find_anagram_pigeonhole(inst, 2)
        ok += revalidate(ce, inst)
    print(f"pigeonhole witnesses on (<=3)-subdivisions of K_100: {ok}/{args.witness_runs} validated")
    return 0 if violations == 0 and ok == args.witness_runs else 1


if __name__ == "__main__":
    sys.exit(main())
