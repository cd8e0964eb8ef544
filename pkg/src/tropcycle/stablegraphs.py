"""Combinatorial types of stable tropical curves of genus g with n marks.

Marks are labelled legs attached to vertices.  Types are generated from the
one-vertex type by repeatedly inserting loops or splitting vertices, and
deduplicated by a canonical form computed over vertex orderings that respect
a refined vertex colouring.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True, order=True)
class StableGraphType:
    """``weights[v]``, undirected ``edges`` as sorted pairs, ``legs[i]`` = vertex of mark i+1."""

    weights: tuple
    edges: tuple
    legs: tuple

    @property
    def n_vertices(self) -> int:
        return len(self.weights)

    def valence(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def marks_at(self, v: int) -> int:
        return sum(1 for x in self.legs if x == v)

    @property
    def betti(self) -> int:
        return len(self.edges) - self.n_vertices + 1

    @property
    def genus(self) -> int:
        return self.betti + sum(self.weights)

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for a, b in self.edges:
                for y, z in ((a, b), (b, a)):
                    if y == x and z not in seen:
                        seen.add(z)
                        stack.append(z)
        return len(seen) == self.n_vertices

    def is_stable(self) -> bool:
        return all(2 * w - 2 + self.valence(v) + self.marks_at(v) > 0 for v, w in enumerate(self.weights))

    def is_maximal(self) -> bool:
        """All weights 0 and every vertex trivalent (marks counted)."""
        return all(w == 0 and self.valence(v) + self.marks_at(v) == 3 for v, w in enumerate(self.weights))

    def to_dict(self) -> dict:
        return {"weights": list(self.weights), "edges": [list(e) for e in self.edges], "legs": list(self.legs)}

    @classmethod
    def from_dict(cls, d: dict) -> "StableGraphType":
        return cls(tuple(d["weights"]), tuple(tuple(e) for e in d["edges"]), tuple(d["legs"]))


def _relabel(T: StableGraphType, perm: Sequence[int]) -> tuple:
    """Type with vertex v renamed perm[v], as a comparable tuple."""
    inv = [0] * len(perm)
    for v, p in enumerate(perm):
        inv[p] = v
    weights = tuple(T.weights[inv[i]] for i in range(len(perm)))
    edges = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in T.edges))
    legs = tuple(perm[x] for x in T.legs)
    return weights, edges, legs


def _colours(T: StableGraphType) -> list:
    """Colour refinement seeded by weight, valence, loops and the marks carried."""
    col = [(w, T.valence(v), sum(1 for a, b in T.edges if a == b == v),
            tuple(i for i, x in enumerate(T.legs) if x == v)) for v, w in enumerate(T.weights)]
    for _ in range(T.n_vertices):
        sig = []
        for v in range(T.n_vertices):
            nb = sorted(col[b if a == v else a] for a, b in T.edges if v in (a, b) and a != b)
            sig.append((col[v], tuple(nb)))
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(map(str, col))):
            col = new
            break
        col = new
    return col


def canonical_form(T: StableGraphType) -> StableGraphType:
    """Lexicographically least relabelling among colour-respecting orderings."""
    col = _colours(T)
    classes: dict = {}
    for v, c in enumerate(col):
        classes.setdefault(c, []).append(v)
    ordered = [classes[c] for c in sorted(classes)]
    best = None
    for choice in itertools.product(*[itertools.permutations(cls) for cls in ordered]):
        order = [v for block in choice for v in block]
        perm = [0] * len(order)
        for pos, v in enumerate(order):
            perm[v] = pos
        cand = _relabel(T, perm)
        if best is None or cand < best:
            best = cand
    return StableGraphType(*best)


def _split_vertex(T: StableGraphType, v: int):
    """All ways to split v into v and a new vertex joined by an edge."""
    nv = T.n_vertices
    new = nv
    ends = []  # (edge index, which end)
    for i, (a, b) in enumerate(T.edges):
        if a == v:
            ends.append((i, 0))
        if b == v:
            ends.append((i, 1))
    leg_ids = [i for i, x in enumerate(T.legs) if x == v]
    w = T.weights[v]
    for w1 in range(w + 1):
        for mask in range(2 ** (len(ends) + len(leg_ids))):
            edges = [list(e) for e in T.edges]
            for k, (i, side) in enumerate(ends):
                if mask >> k & 1:
                    edges[i][side] = new
            legs = list(T.legs)
            for k, i in enumerate(leg_ids):
                if mask >> (len(ends) + k) & 1:
                    legs[i] = new
            edges.append([v, new])
            weights = list(T.weights) + [w - w1]
            weights[v] = w1
            yield StableGraphType(tuple(weights), tuple(tuple(sorted(e)) for e in edges), tuple(legs))


def degenerations(T: StableGraphType):
    """Types with one more edge that contract back to T."""
    for v, w in enumerate(T.weights):
        if w >= 1:
            weights = list(T.weights)
            weights[v] -= 1
            yield StableGraphType(tuple(weights), tuple(sorted(T.edges + ((v, v),))), T.legs)
        yield from _split_vertex(T, v)


def enumerate_stable_graphs(g: int, n: int) -> list[StableGraphType]:
    """All stable types of genus g with n labelled marks, canonically ordered."""
    if g < 0 or n < 0:
        raise ValueError("g and n must be non-negative")
    if 2 * g - 2 + n <= 0:
        raise ValueError(f"(g, n) = ({g}, {n}) is not in the stable range 2g - 2 + n > 0")
    if g + n > 5:
        raise ValueError("enumeration is supported for g + n <= 5")
    start = canonical_form(StableGraphType((g,), (), (0,) * n))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for T in frontier:
            for D in degenerations(T):
                if not D.is_stable():
                    continue
                C = canonical_form(D)
                if C not in seen:
                    seen.add(C)
                    nxt.append(C)
        frontier = nxt
    return sorted(seen, key=lambda T: (len(T.edges), T.n_vertices, T))

