"""Time hypersurface construction and balancing checks on random plane polynomials."""

from __future__ import annotations

import argparse
import random
import time

from tropcycle.generators import random_trop_poly
from tropcycle.polycx import check_balanced
from tropcycle.troppoly import hypersurface


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    print("degree  polys  cells  unbalanced  seconds")
    for degree in range(1, 7):
        n = args.count // 6
        cells = bad = 0
        t0 = time.perf_counter()
        for _ in range(n):
            X = hypersurface(random_trop_poly(rng, degree=degree))
            cells += len(X.top_cells())
            bad += not check_balanced(X).balanced
        print(f"{degree:6d}  {n:5d}  {cells:5d}  {bad:10d}  {time.perf_counter() - t0:7.2f}")


if __name__ == "__main__":
    main()
