"""Count stable graph types by genus and number of marks."""

from __future__ import annotations

import argparse
from collections import Counter

from tropcycle.stablegraphs import enumerate_stable_graphs


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-total", type=int, default=5, help="largest g + n to enumerate")
    args = ap.parse_args()

    print("g  n  types  maximal  by edge count")
    for total in range(1, args.max_total + 1):
        for g in range(total + 1):
            n = total - g
            if 2 * g - 2 + n <= 0:
                continue
            types = enumerate_stable_graphs(g, n)
            by_edges = Counter(len(T.edges) for T in types)
            hist = " ".join(f"{e}:{c}" for e, c in sorted(by_edges.items()))
            print(f"{g}  {n}  {len(types):5d}  {sum(T.is_maximal() for T in types):7d}  {hist}")


if __name__ == "__main__":
    main()
