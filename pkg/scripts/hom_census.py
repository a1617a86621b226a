#!/usr/bin/env python3
"""Distribution of Hom-set sizes across a random adjunction corpus.

Prints, per instance, the common cardinality of the two Hom sets on each side
of both adjunctions; a mismatch or failed round trip aborts with details.
"""
import argparse
import random
import sys
from collections import Counter
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from ditrace.fixtures import adjunction_instance
from ditrace.scalars import adjunction_left_check, adjunction_right_check


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--count", type=int, default=50)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    left_sizes = Counter()
    right_sizes = Counter()
    for i in range(args.count):
        l, mod_src, mod_tgt = adjunction_instance(rng)
        left = adjunction_left_check(l, mod_src, mod_tgt)
        right = adjunction_right_check(l, mod_tgt, mod_src)
        if not (left.ok and right.ok):
            print(f"instance {i} FAILED:", left.failures or right.failures)
            raise SystemExit(1)
        left_sizes[left.left_count] += 1
        right_sizes[right.left_count] += 1
    print(f"{args.count} instances, all round trips identities")
    print("hom sizes, extension side:    ",
          dict(sorted(left_sizes.items())))
    print("hom sizes, co-extension side: ",
          dict(sorted(right_sizes.items())))


if __name__ == "__main__":
    main()
