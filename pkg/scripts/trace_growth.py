#!/usr/bin/env python3
"""Growth of the trace monoid and the first dihomotopy module on a grid.

Counts traces by length and dihomotopy classes by endpoint span, to give a
feel for the sizes the bounded checkers walk through.
"""
import argparse
import sys
from collections import Counter
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from ditrace.fixtures import bundled_space
from ditrace.spaces import pi1_module


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--model", default="swiss5",
                        choices=["empty3", "hole3", "swiss5", "diamond"])
    parser.add_argument("--bound", type=int, default=6)
    args = parser.parse_args()

    space = bundled_space(args.model)
    lengths = Counter(len(p.steps) for p in space.all_paths(args.bound))
    print(f"model {args.model}: traces by length up to {args.bound}")
    for n in sorted(lengths):
        print(f"  length {n}: {lengths[n]}")

    mod = pi1_module(space)
    if hasattr(space, "width"):
        spans = Counter()
        for a in space.vertices():
            for b in space.vertices():
                if a[0] <= b[0] and a[1] <= b[1]:
                    spans[(b[0] - a[0]) + (b[1] - a[1])] += len(mod.classes(a, b))
        print("dihomotopy classes by endpoint distance:")
        for d in sorted(spans):
            print(f"  distance {d}: {spans[d]}")
    else:
        pairs = sorted({(p.start, space.path_end(p))
                        for p in space.all_paths(args.bound)})
        total = sum(len(mod.classes(a, b)) for a, b in pairs)
        print(f"graph model: {total} classes over {len(pairs)} endpoint pairs")


if __name__ == "__main__":
    main()
