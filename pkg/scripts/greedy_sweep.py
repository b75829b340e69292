"""Size distribution of greedy smaller-diameter subsets over many seeds."""

import argparse
from collections import Counter

from borsuk.certify import Pipeline
from borsuk.diameter import SMALLER_DIAMETER_CAP, greedy_smaller_diameter_subset


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=200)
    ap.add_argument("--subset", choices=["M", "N", "K", "L"], default="M")
    args = ap.parse_args()

    pts = getattr(Pipeline(), args.subset)
    sizes = Counter(len(greedy_smaller_diameter_subset(pts, s)) for s in range(args.seeds))
    for size in sorted(sizes):
        print(f"{size:4d} {sizes[size]:5d}")
    print(f"max {max(sizes)} (cap {SMALLER_DIAMETER_CAP})")


if __name__ == "__main__":
    main()
