"""Random instances for property tests and experiment scripts.

All generators take a :class:`random.Random` so runs are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import floor

from .graphcurve import Divisor, GraphPoint, MetricGraph, PLFunction
from .troppoly import TropPoly


def random_length(rng: random.Random, max_num: int = 12, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(1, max_num), rng.randint(1, max_den))


def random_graph(rng: random.Random, genus: int, max_vertices: int = 4) -> MetricGraph:
    """Connected graph of first Betti number ``genus`` with every valence >= 2.

    For genus >= 1 the vertices sit on a cycle and the remaining ``genus - 1``
    edges join random vertex pairs (loops allowed).  Genus 0 gives a path.
    """
    nv = rng.randint(1, max_vertices)
    if genus == 0:
        nv = max(nv, 2)
        edges = [(i, i + 1, random_length(rng)) for i in range(nv - 1)]
        return MetricGraph((0,) * nv, tuple(edges), allow_leaves=True)
    edges = [(i, (i + 1) % nv, random_length(rng)) for i in range(nv)]
    for _ in range(genus - 1):
        edges.append((rng.randrange(nv), rng.randrange(nv), random_length(rng)))
    return MetricGraph((0,) * nv, tuple(edges))


def random_point(rng: random.Random, G: MetricGraph) -> GraphPoint:
    if rng.random() < 0.3:
        return GraphPoint(vertex=rng.randrange(G.n_vertices))
    e = rng.randrange(G.n_edges)
    l = G.length(e)
    return G.point(e, l * Fraction(rng.randint(1, 7), 8))


def random_divisor(rng: random.Random, G: MetricGraph, degree: int = 0, size: int = 4) -> Divisor:
    pts = [random_point(rng, G) for _ in range(size)]
    mults = [rng.randint(-2, 2) for _ in range(size - 1)]
    mults.append(degree - sum(mults))
    return Divisor(list(zip(pts, mults)))


def _edge_profile(rng: random.Random, l: Fraction, delta: Fraction, max_breaks: int) -> list:
    """Interior knots of an integer-slope PL path from 0 to ``delta`` over length l.

    A few random pieces first; the rest of the edge is closed off by at most
    two pieces whose slopes bracket the remaining average slope.
    """
    knots = []
    t, y = Fraction(0), Fraction(0)
    for _ in range(rng.randint(0, max_breaks)):
        step = (l - t) * Fraction(rng.randint(1, 3), 5)
        t, y = t + step, y + rng.randint(-3, 3) * step
        knots.append((t, y))
    L, D = l - t, delta - y
    avg = D / L
    if avg.denominator == 1:
        return knots
    s_lo = floor(avg) - rng.randint(0, 2)
    s_hi = floor(avg) + 1 + rng.randint(0, 2)
    # a + b = L and s_lo a + s_hi b = D
    b = (D - s_lo * L) / (s_hi - s_lo)
    a = L - b
    first = (s_lo, a) if rng.random() < 0.5 else (s_hi, b)
    knots.append((t + first[1], y + first[0] * first[1]))
    return knots


def random_pl_function(rng: random.Random, G: MetricGraph, max_breaks: int = 3) -> PLFunction:
    """Random PL function with integer slopes: random vertex values, random edge profiles."""
    vals = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(G.n_vertices)]
    breaks = []
    for u, v, l in G.edges:
        delta = vals[v] - vals[u]
        breaks.append(tuple((t, vals[u] + y) for t, y in _edge_profile(rng, l, delta, max_breaks)))
    return PLFunction(G, tuple(vals), tuple(breaks))


def random_trop_poly(rng: random.Random, degree: int = 6, n_terms: int | None = None) -> TropPoly:
    """Random bivariate tropical polynomial with support in the degree-``degree`` triangle."""
    pool = [(i, j) for i in range(degree + 1) for j in range(degree + 1 - i)]
    k = n_terms or rng.randint(1, min(len(pool), 10))
    support = rng.sample(pool, k)
    return TropPoly(2, tuple((e, Fraction(rng.randint(-20, 20), rng.randint(1, 4))) for e in support))


def random_family(rng: random.Random, genus: int, n_params: int = 2, n_marks: int = 0):
    """Family over the open orthant with lengths ``c0 + sum c_k s_k`` (c0 > 0, c_k >= 0).

    Marks sit on random edges at a fixed fraction of the edge length, so
    they stay inside their edge on the whole orthant.
    """
    from .tvhs import Affine, CurveFamily, Mark

    G = random_graph(rng, genus)
    lengths = tuple(
        Affine(random_length(rng, 6, 3), tuple(Fraction(rng.randint(0, 3), rng.randint(1, 2)) for _ in range(n_params)))
        for _ in range(G.n_edges)
    )
    cone = tuple((tuple(Fraction(int(i == k)) for i in range(n_params)), Fraction(0)) for k in range(n_params))
    marks = []
    for _ in range(n_marks):
        e = rng.randrange(G.n_edges)
        marks.append(Mark(edge=e, offset=lengths[e] * Fraction(rng.randint(1, 6), 7)))
    return CurveFamily(G, lengths, cone, tuple(marks))
