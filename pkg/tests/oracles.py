"""Small independent reference implementations used by several test files."""

from __future__ import annotations

from fractions import Fraction

import networkx as nx

from tropcycle.graphcurve import Divisor, GraphPoint, MetricGraph


def betti_networkx(G: MetricGraph) -> int:
    M = nx.MultiGraph()
    M.add_nodes_from(range(G.n_vertices))
    for u, v, _ in G.edges:
        M.add_edge(u, v)
    return M.number_of_edges() - M.number_of_nodes() + nx.number_connected_components(M)


def is_q_reduced(D: Divisor, q: GraphPoint, G: MetricGraph) -> bool:
    """Dhar's burning test on the model subdivided at the support of D.

    Fire starts at q and runs through chip-free segments; a point holding k
    chips catches fire once more than k of its incident directions burn.
    """
    if any(m < 0 for p, m in D.items() if p != q):
        return False
    cuts: dict[int, set] = {e: set() for e in range(G.n_edges)}
    for p in list(D.support()) + [q]:
        if p.vertex is None:
            cuts[p.edge].add(p.offset)
    nodes: list = [("v", v) for v in range(G.n_vertices)]
    segs = []
    for e, (u, v, l) in enumerate(G.edges):
        prev = ("v", u)
        for t in sorted(cuts[e]):
            node = ("e", e, t)
            nodes.append(node)
            segs.append((prev, node))
            prev = node
        segs.append((prev, ("v", v)))

    def chips(node):
        p = GraphPoint(vertex=node[1]) if node[0] == "v" else GraphPoint(edge=node[1], offset=node[2])
        return D[p]

    def as_node(p):
        return ("v", p.vertex) if p.vertex is not None else ("e", p.edge, p.offset)

    burnt = {as_node(q)}
    burnt_segs: set = set()
    changed = True
    while changed:
        changed = False
        for i, (a, b) in enumerate(segs):
            if i not in burnt_segs and (a in burnt or b in burnt):
                burnt_segs.add(i)
                changed = True
        for n in nodes:
            if n in burnt:
                continue
            k = sum((a == n) + (b == n) for i, (a, b) in enumerate(segs) if i in burnt_segs)
            if k > chips(n):
                burnt.add(n)
                changed = True
    return len(burnt) == len(nodes)


def frac_grid(lo: int, hi: int, den: int) -> list[Fraction]:
    return [Fraction(k, den) for k in range(lo * den, hi * den + 1)]
