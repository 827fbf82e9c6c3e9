#!/usr/bin/env python3
"""Run the exact operator-identity suite across a range of ground sets."""

import argparse
import time

from goa import GroundSet
from goa.identities import DEFAULT_SEED, identity_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--min-n", type=int, default=2)
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    args = ap.parse_args()

    for n in range(args.min_n, args.max_n + 1):
        start = time.monotonic()
        checks = identity_suite(GroundSet(n), seed=args.seed)
        bad = [name for name, ok, _ in checks if not ok]
        verdict = "all pass" if not bad else f"FAILED: {bad}"
        print(f"n={n}: {len(checks)} identities, {verdict} "
              f"[{time.monotonic() - start:.1f}s]")


if __name__ == "__main__":
    main()
