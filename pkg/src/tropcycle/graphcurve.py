"""Abstract tropical curves: metric graphs, divisors and piecewise-linear functions."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable

from . import linalg as la
from .tropnum import rat


@dataclass(frozen=True, order=False)
class GraphPoint:
    """A point of a metric graph: a vertex, or an edge with an offset in (0, length)."""

    vertex: int | None = None
    edge: int | None = None
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        if (self.vertex is None) == (self.edge is None):
            raise ValueError("a GraphPoint is either a vertex or an edge point")
        object.__setattr__(self, "offset", rat(self.offset))

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None

    def sort_key(self):
        if self.vertex is not None:
            return (0, self.vertex, Fraction(0))
        return (1, self.edge, self.offset)

    def __lt__(self, other: "GraphPoint") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        if self.vertex is not None:
            return f"v{self.vertex}"
        return f"e{self.edge}@{self.offset}"


def V(i: int) -> GraphPoint:
    return GraphPoint(vertex=i)


@dataclass(frozen=True)
class MetricGraph:
    """Vertex-weighted metric graph with marked points.

    ``edges`` are ``(u, v, length)`` triples oriented from u to v; loops are
    allowed.  Offsets along an edge are measured from u.
    """

    vertex_weights: tuple
    edges: tuple
    marks: tuple = ()
    allow_leaves: bool = field(default=False, compare=False)
    allow_disconnected: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertex_weights", tuple(int(w) for w in self.vertex_weights))
        edges = tuple((int(u), int(v), rat(l)) for u, v, l in self.edges)
        object.__setattr__(self, "edges", edges)
        nv = len(self.vertex_weights)
        for i, (u, v, l) in enumerate(edges):
            if not (0 <= u < nv and 0 <= v < nv):
                raise ValueError(f"edge {i} has an endpoint outside the vertex set")
            if l <= 0:
                raise ValueError(f"edge {i} has non-positive length {l}")
        if any(w < 0 for w in self.vertex_weights):
            raise ValueError("vertex weights must be non-negative")
        marks = tuple(self.canonical(p) for p in self.marks)
        object.__setattr__(self, "marks", marks)
        if nv and not self.allow_disconnected and self.components() != 1:
            raise ValueError("graph is not connected")
        if not self.allow_leaves and edges and all(w == 0 for w in self.vertex_weights):
            bad = [v for v in range(nv) if self.valence(v) < 2]
            if bad:
                raise ValueError(f"vertices {bad} have valence < 2")

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_weights)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def length(self, e: int) -> Fraction:
        return self.edges[e][2]

    def valence(self, v: int) -> int:
        return sum((u == v) + (w == v) for u, w, _ in self.edges)

    def incident(self, v: int) -> list[tuple[int, int]]:
        """Edge-ends at v as (edge, side) with side 0 = tail (offset 0), 1 = head."""
        out = []
        for i, (a, b, _) in enumerate(self.edges):
            if a == v:
                out.append((i, 0))
            if b == v:
                out.append((i, 1))
        return out

    def components(self) -> int:
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v, _ in self.edges:
            parent[find(u)] = find(v)
        return len({find(x) for x in range(self.n_vertices)})

    def component_of(self) -> list[int]:
        comp = [-1] * self.n_vertices
        c = 0
        for s in range(self.n_vertices):
            if comp[s] >= 0:
                continue
            comp[s] = c
            stack = [s]
            while stack:
                x = stack.pop()
                for e, side in self.incident(x):
                    u, v, _ = self.edges[e]
                    y = v if side == 0 else u
                    if comp[y] < 0:
                        comp[y] = c
                        stack.append(y)
            c += 1
        return comp

    def point(self, edge: int, offset) -> GraphPoint:
        """Canonical point at ``offset`` along ``edge`` (vertices at the ends)."""
        offset = rat(offset)
        u, v, l = self.edges[edge]
        if offset < 0 or offset > l:
            raise ValueError(f"offset {offset} outside edge {edge} of length {l}")
        if offset == 0:
            return GraphPoint(vertex=u)
        if offset == l:
            return GraphPoint(vertex=v)
        return GraphPoint(edge=edge, offset=offset)

    def canonical(self, p: GraphPoint) -> GraphPoint:
        if p.vertex is not None:
            if not 0 <= p.vertex < self.n_vertices:
                raise ValueError(f"vertex {p.vertex} out of range")
            return p
        if not 0 <= p.edge < self.n_edges:
            raise ValueError(f"edge {p.edge} out of range")
        return self.point(p.edge, p.offset)

    def scaled(self, lam) -> "MetricGraph":
        lam = rat(lam)
        marks = tuple(GraphPoint(edge=p.edge, offset=p.offset * lam) if p.edge is not None else p for p in self.marks)
        return MetricGraph(self.vertex_weights, tuple((u, v, l * lam) for u, v, l in self.edges), marks,
                           self.allow_leaves, self.allow_disconnected)

    def with_lengths(self, lengths) -> "MetricGraph":
        return MetricGraph(self.vertex_weights, tuple((u, v, rat(l)) for (u, v, _), l in zip(self.edges, lengths)),
                           (), self.allow_leaves, self.allow_disconnected)


# ---------------------------------------------------------------- divisors

class Divisor:
    """Finitely supported integer combination of graph points."""

    __slots__ = ("_m",)

    def __init__(self, mults=None):
        m = {}
        for p, k in (mults.items() if isinstance(mults, dict) else (mults or ())):
            k = int(k)
            if k:
                m[p] = m.get(p, 0) + k
                if m[p] == 0:
                    del m[p]
        self._m = m

    @classmethod
    def of(cls, G: MetricGraph, mults) -> "Divisor":
        items = mults.items() if isinstance(mults, dict) else mults
        return cls([(G.canonical(p), k) for p, k in items])

    def items(self):
        return sorted(self._m.items(), key=lambda kv: kv[0].sort_key())

    def support(self) -> list[GraphPoint]:
        return [p for p, _ in self.items()]

    def __getitem__(self, p: GraphPoint) -> int:
        return self._m.get(p, 0)

    def __len__(self) -> int:
        return len(self._m)

    @property
    def degree(self) -> int:
        return sum(self._m.values())

    def multidegree(self, G: MetricGraph) -> list[int]:
        comp = G.component_of()
        out = [0] * (max(comp) + 1 if comp else 0)
        for p, k in self._m.items():
            v = p.vertex if p.vertex is not None else G.edges[p.edge][0]
            out[comp[v]] += k
        return out

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor(list(self._m.items()) + list(other._m.items()))

    def __neg__(self) -> "Divisor":
        return Divisor([(p, -k) for p, k in self._m.items()])

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __mul__(self, c: int) -> "Divisor":
        return Divisor([(p, c * k) for p, k in self._m.items()])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and self._m == other._m

    def __hash__(self):
        return hash(tuple(self.items()))

    def is_effective(self, away_from: GraphPoint | None = None) -> bool:
        return all(k >= 0 for p, k in self._m.items() if p != away_from)

    def __repr__(self) -> str:
        if not self._m:
            return "Divisor(0)"
        return "Divisor(" + " + ".join(f"{k}*{p!r}" for p, k in self.items()) + ")"


# ---------------------------------------------------------------- PL functions

@dataclass(frozen=True)
class PLFunction:
    """Continuous piecewise-linear function with integer slopes on a metric graph.

    ``vertex_values[v]`` is the value at vertex v; ``breaks[e]`` lists the
    interior break points ``(offset, value)`` of edge e in increasing offset.
    """

    graph: MetricGraph
    vertex_values: tuple
    breaks: tuple

    def __post_init__(self):
        G = self.graph
        vv = tuple(rat(x) for x in self.vertex_values)
        if len(vv) != G.n_vertices:
            raise ValueError("one value per vertex is required")
        br = tuple(tuple((rat(t), rat(y)) for t, y in b) for b in self.breaks)
        if len(br) != G.n_edges:
            raise ValueError("one break list per edge is required")
        object.__setattr__(self, "vertex_values", vv)
        object.__setattr__(self, "breaks", br)
        for e in range(G.n_edges):
            for (t0, y0), (t1, y1) in zip(self.knots(e), self.knots(e)[1:]):
                if t1 <= t0:
                    raise ValueError(f"break points on edge {e} are not increasing inside the edge")
                s = (y1 - y0) / (t1 - t0)
                if s.denominator != 1:
                    raise ValueError(f"slope {s} on edge {e} is not an integer")

    @classmethod
    def constant(cls, G: MetricGraph, c=0) -> "PLFunction":
        return cls(G, (rat(c),) * G.n_vertices, ((),) * G.n_edges)

    def knots(self, e: int) -> list[tuple[Fraction, Fraction]]:
        u, v, l = self.graph.edges[e]
        return [(Fraction(0), self.vertex_values[u])] + list(self.breaks[e]) + [(l, self.vertex_values[v])]

    def segments(self, e: int) -> list[tuple[Fraction, Fraction, int]]:
        """(start, end, slope) pieces of edge e."""
        ks = self.knots(e)
        return [(t0, t1, int((y1 - y0) / (t1 - t0))) for (t0, y0), (t1, y1) in zip(ks, ks[1:])]

    def value(self, p: GraphPoint) -> Fraction:
        if p.vertex is not None:
            return self.vertex_values[p.vertex]
        ks = self.knots(p.edge)
        for (t0, y0), (t1, y1) in zip(ks, ks[1:]):
            if t0 <= p.offset <= t1:
                return y0 + (y1 - y0) * (p.offset - t0) / (t1 - t0)
        raise ValueError("offset outside edge")

    def __add__(self, other: "PLFunction") -> "PLFunction":
        if other.graph is not self.graph and other.graph != self.graph:
            raise ValueError("functions live on different graphs")
        G = self.graph
        breaks = []
        for e in range(G.n_edges):
            ts = sorted({t for t, _ in self.breaks[e]} | {t for t, _ in other.breaks[e]})
            breaks.append(tuple((t, self.value(GraphPoint(edge=e, offset=t)) + other.value(GraphPoint(edge=e, offset=t)))
                                for t in ts))
        vv = tuple(a + b for a, b in zip(self.vertex_values, other.vertex_values))
        return PLFunction(G, vv, tuple(breaks))

    def __neg__(self) -> "PLFunction":
        return PLFunction(self.graph, tuple(-x for x in self.vertex_values),
                          tuple(tuple((t, -y) for t, y in b) for b in self.breaks))

    def __sub__(self, other: "PLFunction") -> "PLFunction":
        return self + (-other)


def genus(G: MetricGraph) -> int:
    """First Betti number plus the total vertex weight."""
    return G.n_edges - G.n_vertices + G.components() + sum(G.vertex_weights)


def betti(G: MetricGraph) -> int:
    return G.n_edges - G.n_vertices + G.components()


def outgoing_slopes(f: PLFunction, p: GraphPoint) -> list[int]:
    G = f.graph
    p = G.canonical(p)
    if p.vertex is not None:
        out = []
        for e, side in G.incident(p.vertex):
            segs = f.segments(e)
            out.append(segs[0][2] if side == 0 else -segs[-1][2])
        return out
    left = right = None
    for t0, t1, s in f.segments(p.edge):
        if t0 < p.offset <= t1 and left is None:
            left = s
        if t0 <= p.offset < t1:
            right = s
    return [right, -left]


def ord_at(f: PLFunction, p: GraphPoint) -> int:
    """Sum of the outgoing slopes of f at p."""
    return sum(outgoing_slopes(f, p))


def divisor_of(f: PLFunction, G: MetricGraph | None = None) -> Divisor:
    """Principal divisor ``sum_p ord_p(f) p``."""
    G = G or f.graph
    pts = [GraphPoint(vertex=v) for v in range(G.n_vertices)]
    for e in range(G.n_edges):
        pts += [GraphPoint(edge=e, offset=t) for t, _ in f.breaks[e]]
    return Divisor([(p, ord_at(f, p)) for p in pts])


def canonical_divisor(G: MetricGraph) -> Divisor:
    """``K = sum_v (val(v) + 2 w(v) - 2) v``."""
    return Divisor([(GraphPoint(vertex=v), G.valence(v) + 2 * G.vertex_weights[v] - 2) for v in range(G.n_vertices)])


# ---------------------------------------------------------------- model graphs

@dataclass
class Model:
    """Subdivision of a metric graph at finitely many points.

    ``segments`` are ``(a, b, length, edge, t0, t1)`` with node indices a, b
    and the covered offset range [t0, t1] of the original edge (a at t0).
    """

    graph: MetricGraph
    nodes: list
    segments: list

    def node_index(self) -> dict:
        return {p: i for i, p in enumerate(self.nodes)}

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """For each node, (segment, side) ends with side 0 at t0."""
        adj = [[] for _ in self.nodes]
        for s, (a, b, *_rest) in enumerate(self.segments):
            adj[a].append((s, 0))
            adj[b].append((s, 1))
        return adj

    def point_along(self, s: int, side: int, eps: Fraction) -> GraphPoint:
        a, b, l, e, t0, t1 = self.segments[s]
        return self.graph.point(e, t0 + eps if side == 0 else t1 - eps)


def model(G: MetricGraph, points: Iterable[GraphPoint] = ()) -> Model:
    nodes = [GraphPoint(vertex=v) for v in range(G.n_vertices)]
    cuts: dict = {}
    for p in points:
        p = G.canonical(p)
        if p.edge is not None:
            cuts.setdefault(p.edge, set()).add(p.offset)
    extra = sorted(GraphPoint(edge=e, offset=t) for e, ts in cuts.items() for t in ts)
    nodes += extra
    idx = {p: i for i, p in enumerate(nodes)}
    segments = []
    for e, (u, v, l) in enumerate(G.edges):
        ts = sorted(cuts.get(e, ()))
        stops = [(Fraction(0), idx[GraphPoint(vertex=u)])] + [(t, idx[GraphPoint(edge=e, offset=t)]) for t in ts] + [
            (l, idx[GraphPoint(vertex=v)])]
        for (t0, a), (t1, b) in zip(stops, stops[1:]):
            segments.append((a, b, t1 - t0, e, t0, t1))
    return Model(G, nodes, segments)


def spanning_tree(n_nodes: int, segments, root: int = 0):
    """BFS spanning tree: (parent segment per node, BFS order, non-tree segments)."""
    adj = [[] for _ in range(n_nodes)]
    for s, (a, b, *_r) in enumerate(segments):
        adj[a].append((s, b))
        adj[b].append((s, a))
    parent = [None] * n_nodes
    seen = [False] * n_nodes
    seen[root] = True
    order = [root]
    dq = deque([root])
    tree = set()
    while dq:
        x = dq.popleft()
        for s, y in adj[x]:
            if not seen[y]:
                seen[y] = True
                parent[y] = s
                tree.add(s)
                order.append(y)
                dq.append(y)
    non_tree = [s for s in range(len(segments)) if s not in tree]
    return parent, order, non_tree


def tree_path(segments, parent, node) -> list[tuple[int, int]]:
    """Oriented segments from the root to ``node`` as (segment, +1/-1)."""
    path = []
    x = node
    while parent[x] is not None:
        s = parent[x]
        a, b = segments[s][0], segments[s][1]
        if b == x:
            path.append((s, 1))
            x = a
        else:
            path.append((s, -1))
            x = b
    return path[::-1]


# ---------------------------------------------------------------- linear equivalence

def principal_witness(D: Divisor, G: MetricGraph) -> PLFunction | None:
    """A PL function f with div(f) = D, or None when D is not principal.

    f is affine on every segment of the model at supp(D); integer slopes form a
    flow with divergence D whose edge-length weighted circulation around every
    cycle vanishes.
    """
    if D.degree != 0:
        return None
    M = model(G, D.support())
    nn = len(M.nodes)
    idx = M.node_index()
    segs = M.segments
    comp = G.component_of()
    roots = {}
    for v, c in enumerate(comp):
        roots.setdefault(c, v)
    # forest over all components
    parent = [None] * nn
    order = []
    non_tree = set(range(len(segs)))
    for c, r in sorted(roots.items()):
        par, ordr, _ = spanning_tree(nn, segs, r)
        for x in ordr:
            if x != r:
                parent[x] = par[x]
                non_tree.discard(par[x])
        order += ordr
    if sum(D.multidegree(G)) != 0 or any(D.multidegree(G)):
        return None
    # tree flow with divergence D: process nodes leaves-first
    demand = [0] * nn
    for p, k in D.items():
        demand[idx[p]] += k
    m = [0] * len(segs)
    for x in reversed(order):
        s = parent[x]
        if s is None:
            continue
        a, b = segs[s][0], segs[s][1]
        # ord at x from this segment must absorb the remaining demand of x
        if a == x:
            m[s] += demand[x]
            demand[b] += demand[x]
        else:
            m[s] -= demand[x]
            demand[a] += demand[x]
        demand[x] = 0
    non_tree = sorted(non_tree)
    cycles = []
    for s in non_tree:
        a, b = segs[s][0], segs[s][1]
        cyc = [0] * len(segs)
        cyc[s] += 1
        for t, sg in tree_path(segs, parent, b):
            cyc[t] -= sg
        for t, sg in tree_path(segs, parent, a):
            cyc[t] += sg
        cycles.append(cyc)
    g = len(cycles)
    if g:
        Q = [[sum(segs[s][2] * ci[s] * cj[s] for s in range(len(segs))) for cj in cycles] for ci in cycles]
        rhs = [-sum(segs[s][2] * ci[s] * m[s] for s in range(len(segs))) for ci in cycles]
        z = la.solve(Q, rhs)
        if z is None or any(x.denominator != 1 for x in z):
            return None
        for zi, ci in zip(z, cycles):
            m = [ms + int(zi) * c for ms, c in zip(m, ci)]
    # integrate
    val = [None] * nn
    for c, r in sorted(roots.items()):
        val[r] = Fraction(0)
    for x in order:
        s = parent[x]
        if s is None:
            continue
        a, b, l = segs[s][0], segs[s][1], segs[s][2]
        if b == x:
            val[x] = val[a] + m[s] * l
        else:
            val[x] = val[b] - m[s] * l
    breaks = []
    for e in range(G.n_edges):
        breaks.append(tuple((p.offset, val[idx[p]]) for p in M.nodes if p.edge == e))
    f = PLFunction(G, tuple(val[:G.n_vertices]), tuple(breaks))
    return f


def _effective_away_from(D: Divisor, q: GraphPoint, G: MetricGraph) -> Divisor:
    """An equivalent divisor, effective away from q, with few chips.

    Solve the metric Laplacian for a rational potential phi with
    div(phi) = D - B, where B puts val(x) chips on every model node x != q,
    then round phi to integer slopes (ceiling first, then floor, along each
    segment).  D - div(f) is at least B minus the rounding loss, hence >= 0.
    """
    M = model(G, D.support() + [q])
    idx = M.node_index()
    qi = idx[q]
    nn = len(M.nodes)
    val = [0] * nn
    for a, b, *_r in M.segments:
        val[a] += 1
        val[b] += 1
    target = [Fraction(0)] * nn
    for p, k in D.items():
        target[idx[p]] += k
    for x in range(nn):
        if x != qi:
            target[x] -= val[x]
    others = [x for x in range(nn) if x != qi]
    pos = {x: i for i, x in enumerate(others)}
    L = [[Fraction(0)] * len(others) for _ in others]
    for a, b, l, *_r in M.segments:
        if a == b:
            continue
        for x, y in ((a, b), (b, a)):
            if x == qi:
                continue
            L[pos[x]][pos[x]] += 1 / l
            if y != qi:
                L[pos[x]][pos[y]] -= 1 / l
    # ord_x(phi) = -(L phi)(x)
    phi = [Fraction(0)] * nn
    if others:
        sol = la.solve(L, [-target[x] for x in others])
        for x, v in zip(others, sol):
            phi[x] = v
    breaks: dict = {e: [] for e in range(G.n_edges)}
    for a, b, l, e, t0, t1 in M.segments:
        if M.nodes[b].edge is not None:
            breaks[e].append((t1, phi[b]))
        delta = phi[b] - phi[a]
        sigma = delta / l
        if sigma.denominator != 1:
            lo = sigma.numerator // sigma.denominator
            t = delta - lo * l  # length walked with slope lo + 1
            breaks[e].append((t0 + t, phi[a] + (lo + 1) * t))
    f = PLFunction(G, tuple(phi[:G.n_vertices]), tuple(tuple(sorted(breaks[e])) for e in range(G.n_edges)))
    E = D - divisor_of(f, G)
    if not E.is_effective(away_from=q):
        raise RuntimeError("potential rounding left negative chips")
    return E


def reduced_divisor(D: Divisor, q: GraphPoint, G: MetricGraph) -> Divisor:
    """The q-reduced divisor linearly equivalent to D (connected G).

    First D is made effective away from q by rounding a harmonic potential;
    then the metric burning sweep moves chips out of the unburnt region until
    the fire started at q burns the whole graph.
    """
    q = G.canonical(q)
    D = _effective_away_from(D, q, G)
    for _ in range(100000):
        M = model(G, D.support() + [q])
        idx = M.node_index()
        segs = M.segments
        chips = [D[p] for p in M.nodes]
        adj = M.adjacency()
        qi = idx[q]
        burnt = [False] * len(M.nodes)
        seg_burnt = [False] * len(segs)
        inc = [0] * len(M.nodes)
        burnt[qi] = True
        stack = [qi]
        while stack:
            x = stack.pop()
            for s, side in adj[x]:
                if seg_burnt[s]:
                    continue
                seg_burnt[s] = True
                a, b = segs[s][0], segs[s][1]
                y = b if side == 0 else a
                if burnt[y]:
                    continue
                inc[y] += 1
                if inc[y] > chips[y]:
                    burnt[y] = True
                    stack.append(y)
        if all(burnt):
            return D
        moves = []
        for x in range(len(M.nodes)):
            if burnt[x]:
                continue
            for s, side in adj[x]:
                if seg_burnt[s]:
                    moves.append((x, s, side))
        eps = min(segs[s][2] for _, s, _ in moves)
        delta = []
        for x, s, side in moves:
            delta.append((M.nodes[x], -1))
            delta.append((M.point_along(s, side, eps), 1))
        D = D + Divisor(delta)
    raise RuntimeError("burning sweep did not terminate")


@dataclass
class EquivalenceResult:
    equivalent: bool
    witness: PLFunction | None = None
    reduced: tuple = ()

    def __bool__(self) -> bool:
        return self.equivalent


def linearly_equivalent(D1: Divisor, D2: Divisor, G: MetricGraph, base: GraphPoint | None = None,
                        method: str = "reduced") -> EquivalenceResult:
    """Decide D1 ~ D2 and return f with div(f) = D1 - D2 when they are.

    ``method="reduced"`` compares the reduced divisors at ``base`` (default
    vertex 0) and records them; the witness is then recovered by the flow
    solver.  ``method="flow"`` skips the normal forms and solves for integer
    slopes directly.
    """
    if D1.degree != D2.degree:
        raise ValueError("divisors of different degree are never equivalent")
    if G.components() != 1:
        raise ValueError("linear equivalence is implemented for connected graphs")
    if method == "flow":
        f = principal_witness(D1 - D2, G)
        return EquivalenceResult(f is not None, f)
    if method != "reduced":
        raise ValueError(f"unknown method {method!r}")
    q = base or GraphPoint(vertex=0)
    r1 = reduced_divisor(D1, q, G)
    r2 = reduced_divisor(D2, q, G)
    if r1 != r2:
        return EquivalenceResult(False, None, (r1, r2))
    f = principal_witness(D1 - D2, G)
    if f is None:
        raise RuntimeError("reduced forms agree but no witness function was found")
    return EquivalenceResult(True, f, (r1, r2))


# ---------------------------------------------------------------- parametrized curves

@dataclass(frozen=True)
class ParametrizedCurve:
    """A graph mapped to R^m: one primitive direction and weight per edge.

    ``legs`` are unbounded ends ``(vertex, direction, weight)``.  When
    ``positions`` (images of the vertices) are given, bounded edges must
    satisfy ``f(v) - f(u) = length * direction`` (the edge is traversed at
    unit lattice speed).
    """

    graph: MetricGraph
    directions: tuple
    weights: tuple
    legs: tuple = ()
    positions: tuple | None = None


@dataclass
class MapBalanceReport:
    balanced: bool
    defects: dict

    def to_dict(self) -> dict:
        return {"balanced": self.balanced, "defects": {str(k): list(v) for k, v in sorted(self.defects.items())}}


def _check_primitive(d, w, what):
    d = tuple(int(x) for x in d)
    if all(x == 0 for x in d):
        if w != 0:
            raise ValueError(f"{what}: zero direction on an edge of nonzero weight")
        return d
    g = 0
    for x in d:
        g = gcd(g, abs(x))
    if g != 1:
        raise ValueError(f"{what}: direction {d} is not primitive")
    return d


def check_balanced_map(P: ParametrizedCurve) -> MapBalanceReport:
    """Per-vertex defect ``sum_i w(E_i) e_i`` over outgoing edge directions."""
    G = P.graph
    if len(P.directions) != G.n_edges or len(P.weights) != G.n_edges:
        raise ValueError("one direction and one weight per edge are required")
    m = None
    dirs = []
    for i, (d, w) in enumerate(zip(P.directions, P.weights)):
        dirs.append(_check_primitive(d, int(w), f"edge {i}"))
        m = len(d)
    legs = [(int(v), _check_primitive(d, int(w), f"leg at {v}"), int(w)) for v, d, w in P.legs]
    if m is None:
        m = len(legs[0][1]) if legs else 0
    defects = {}
    for v in range(G.n_vertices):
        tot = [0] * m
        for e, side in G.incident(v):
            sgn = 1 if side == 0 else -1
            w = int(P.weights[e])
            tot = [t + sgn * w * x for t, x in zip(tot, dirs[e])]
        for lv, d, w in legs:
            if lv == v:
                tot = [t + w * x for t, x in zip(tot, d)]
        defects[v] = tuple(tot)
    ok = all(all(x == 0 for x in d) for d in defects.values())
    if P.positions is not None:
        pos = [tuple(rat(x) for x in p) for p in P.positions]
        for e, (u, v, l) in enumerate(G.edges):
            w = int(P.weights[e])
            expect = tuple(a + (l * x if w else 0) for a, x in zip(pos[u], dirs[e]))
            if expect != pos[v]:
                raise ValueError(f"edge {e}: vertex positions disagree with its direction and length")
    return MapBalanceReport(ok, defects)


# ---------------------------------------------------------------- tropical homology

def tropical_hodge_numbers(G: MetricGraph) -> dict[tuple[int, int], int]:
    """Ranks of cellular tropical homology with F_0 (constants) and F_1 (tangent) coefficients.

    ``h[(p, q)] = dim H_q(G; F_p)``.  For p = 1 the edge coefficient is the
    rank-1 tangent line and the vertex coefficient is the span of outgoing
    edge directions modulo their sum (rank val(v) - 1).
    """
    if any(G.vertex_weights):
        raise ValueError("tropical Hodge numbers are computed for graphs with all vertex weights 0")
    nv, ne = G.n_vertices, G.n_edges
    # F_0: boundary C_1 -> C_0
    d0 = [[Fraction(0)] * ne for _ in range(nv)]
    for e, (u, v, _) in enumerate(G.edges):
        d0[v][e] += 1
        d0[u][e] -= 1
    r0 = la.rank(d0) if ne and nv else 0
    h00 = nv - r0
    h01 = ne - r0
    # F_1: coordinates of C_0(F_1) are half-edge slots per vertex, modulo (1,...,1)
    # Represent F_1(v) = Q^{val} / <1>, by dropping the last slot after subtracting it.
    slot = {}
    offset = 0
    base = []
    for v in range(nv):
        ends = G.incident(v)
        val = len(ends)
        for k, end in enumerate(ends):
            slot[(v, end)] = (offset, k, val)
        base.append((offset, val))
        offset += max(val - 1, 0)
    dim0 = offset
    d1 = [[Fraction(0)] * ne for _ in range(dim0)]

    def add_end(v, end, col, coeff):
        off, k, val = slot[(v, end)]
        if val <= 1:
            return
        # vector eps_k in Q^val / <1>  ->  coordinates (eps_k - eps_{val-1}) projected to first val-1 slots
        if k < val - 1:
            d1[off + k][col] += coeff
        else:
            for j in range(val - 1):
                d1[off + j][col] -= coeff

    for e, (u, v, _) in enumerate(G.edges):
        # tangent vector of e is the outgoing direction at u and the negative of the outgoing one at v
        add_end(v, (e, 1), e, Fraction(-1))
        add_end(u, (e, 0), e, Fraction(-1))
    r1 = la.rank(d1) if dim0 and ne else 0
    h11 = ne - r1
    h10 = dim0 - r1
    return {(0, 0): h00, (0, 1): h01, (1, 0): h10, (1, 1): h11}
