#!/usr/bin/env python3
"""Build the order-8 merged partition, certify it, and print the full
block structure next to the certificate."""

from goa.partition import format_partition
from goa.srp import build_counterexample


def main():
    part, rep = build_counterexample()
    for line in rep.lines():
        print(line)
    print()
    print(f"blocks: {len(part.blocks)}")
    print(format_partition(part))


if __name__ == "__main__":
    main()
