"""Sweep normal functions of random two-parameter families over a grid.

For each family the section Z = m_0 - m_1 is evaluated at grid points and its
first-order invariant and level are reported.  Output is CSV on stdout.
"""

from __future__ import annotations

import argparse
import csv
import random
import sys
from fractions import Fraction

from tropcycle.generators import random_family
from tropcycle.tropnum import format_rat
from tropcycle.tvhs import DivisorFamily, bb_level, evaluate_grid, infinitesimal_invariant, normal_function


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--families", type=int, default=8)
    ap.add_argument("--grid", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["family", "genus", "s_1", "s_2", "coords", "psi1_zero", "level"])
    pts = [[Fraction(i, args.grid), Fraction(j, args.grid)]
           for i in range(1, 2 * args.grid + 1) for j in range(1, 2 * args.grid + 1)]
    for k in range(args.families):
        fam = random_family(rng, rng.randint(1, 3), n_marks=2)
        nu = normal_function(fam, DivisorFamily(((("mark", 0), 1), (("mark", 1), -1))))
        vanishes = infinitesimal_invariant(nu, 1).vanishes
        level = bb_level(nu).level
        for row in evaluate_grid(nu, pts):
            out.writerow([k, fam.genus, *map(format_rat, row["s"]),
                          " ".join(map(format_rat, row["coords"])), vanishes, level])


if __name__ == "__main__":
    main()
