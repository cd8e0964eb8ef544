"""Tropical Jacobians: cycle bases, period matrices and the Abel–Jacobi map."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from . import linalg as la
from .graphcurve import (
    Divisor,
    GraphPoint,
    MetricGraph,
    PLFunction,
    divisor_of,
    model,
    spanning_tree,
    tree_path,
)


def cycle_basis(G: MetricGraph) -> list[list[int]]:
    """Fundamental cycles of a BFS spanning tree as integer vectors over the edges.

    Cycle i starts along its non-tree edge (coefficient +1) and closes up
    through the tree.
    """
    segs = [(u, v, l) for u, v, l in G.edges]
    parent, _, non_tree = spanning_tree(G.n_vertices, segs, 0)
    basis = []
    for s in non_tree:
        a, b = segs[s][0], segs[s][1]
        cyc = [0] * G.n_edges
        cyc[s] += 1
        for t, sg in tree_path(segs, parent, b):
            cyc[t] -= sg
        for t, sg in tree_path(segs, parent, a):
            cyc[t] += sg
        basis.append(cyc)
    return basis


def boundary(G: MetricGraph, chain) -> list:
    """Vertex boundary (head minus tail) of an edge chain."""
    out = [0] * G.n_vertices
    for (u, v, _), c in zip(G.edges, chain):
        out[v] += c
        out[u] -= c
    return out


def gram(basis, lengths):
    """``Q_ij = sum_e l(e) gamma_i(e) gamma_j(e)``; works for any ring of lengths."""
    g = len(basis)
    Q = []
    for i in range(g):
        row = []
        for j in range(g):
            tot = 0
            for e, l in enumerate(lengths):
                c = basis[i][e] * basis[j][e]
                if c:
                    tot = tot + c * l
            row.append(tot)
        Q.append(row)
    return Q


@dataclass(frozen=True)
class PeriodData:
    """Cycle basis and the edge-length Gram matrix of a metric graph."""

    graph: MetricGraph
    basis: tuple
    Q: tuple

    @property
    def genus(self) -> int:
        return len(self.basis)

    def matrix(self) -> list[list[Fraction]]:
        return [list(r) for r in self.Q]

    def to_dict(self) -> dict:
        from .tropnum import format_rat

        return {"basis": [list(b) for b in self.basis], "Q": [[format_rat(x) for x in r] for r in self.Q]}


def period_matrix(G: MetricGraph, basis=None) -> PeriodData:
    """Period data of G; ``basis`` overrides the spanning-tree cycle basis."""
    if G.components() != 1:
        raise ValueError("period matrices are computed for connected graphs")
    if basis is None:
        basis = cycle_basis(G)
    else:
        basis = [list(map(int, b)) for b in basis]
        for b in basis:
            if any(boundary(G, b)):
                raise ValueError(f"{b} is not a cycle")
        b1 = G.n_edges - G.n_vertices + 1
        if len(basis) != b1 or la.rank([[Fraction(x) for x in b] for b in basis]) != b1:
            raise ValueError("basis does not span the cycle space")
    Q = gram(basis, [l for _, _, l in G.edges])
    return PeriodData(G, tuple(tuple(b) for b in basis), tuple(tuple(Fraction(x) for x in r) for r in Q))


def monodromy_map(P: PeriodData) -> list[list[Fraction]]:
    """The monodromy operator H^{1,0} -> H^{0,1} for curves, i.e. the period pairing."""
    if P.genus == 0:
        raise ValueError("genus 0 has no monodromy")
    return P.matrix()


@dataclass(frozen=True)
class JacPoint:
    """Point of R^g / Q Z^g stored in period coordinates ``v`` with ``Q^{-1} v`` in [0,1)^g."""

    coords: tuple

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coords)

    def to_dict(self) -> dict:
        from .tropnum import format_rat

        return {"coords": [format_rat(x) for x in self.coords], "lattice": "Q-columns"}


def reduce_mod_lattice(v, P: PeriodData) -> JacPoint:
    """Canonical representative of v modulo the lattice spanned by the columns of Q."""
    if P.genus == 0:
        return JacPoint(())
    Q = P.matrix()
    z = la.solve(Q, [Fraction(x) for x in v])
    frac = [x - floor(x) for x in z]
    return JacPoint(tuple(la.matvec(Q, frac)))


def lattice_coordinates(p: JacPoint, P: PeriodData) -> list[Fraction]:
    """``Q^{-1} v`` in [0,1)^g."""
    if P.genus == 0:
        return []
    return la.solve(P.matrix(), list(p.coords))


def jac_add(p: JacPoint, q: JacPoint, P: PeriodData) -> JacPoint:
    return reduce_mod_lattice([a + b for a, b in zip(p.coords, q.coords)], P)


def jac_neg(p: JacPoint, P: PeriodData) -> JacPoint:
    return reduce_mod_lattice([-a for a in p.coords], P)


def integrate(chain, P: PeriodData) -> list[Fraction]:
    """``(sum_e chain(e) l(e) gamma_j(e))_j`` for a real edge chain (lengths already applied)."""
    return [sum((c * g for c, g in zip(chain, b)), Fraction(0)) for b in P.basis]


def bounding_chain(D: Divisor, G: MetricGraph, base: GraphPoint | None = None) -> list[Fraction]:
    """A 1-chain (as signed lengths per edge) with boundary D.

    Each point of D is joined to ``base`` along the BFS tree of the model
    graph; the result is recorded edge by edge as signed traversed length.
    """
    if D.degree != 0:
        raise ValueError("Abel–Jacobi needs a divisor of degree 0")
    base = G.canonical(base or GraphPoint(vertex=0))
    M = model(G, D.support() + [base])
    idx = M.node_index()
    parent, _, _ = spanning_tree(len(M.nodes), M.segments, idx[base])
    chain = [Fraction(0)] * G.n_edges
    for p, k in D.items():
        for s, sg in tree_path(M.segments, parent, idx[p]):
            _, _, l, e, _, _ = M.segments[s]
            chain[e] += k * sg * l
    return chain


def abel_jacobi(D: Divisor, base: GraphPoint | None, P: PeriodData) -> JacPoint:
    """Integrate the harmonic forms dual to the cycle basis over a chain bounding D."""
    chain = bounding_chain(D, P.graph, base)
    return reduce_mod_lattice(integrate(chain, P), P)


def abel_jacobi_of_chain(chain, P: PeriodData) -> JacPoint:
    return reduce_mod_lattice(integrate(chain, P), P)


def aj_of_principal(f: PLFunction, G: MetricGraph | None = None, P: PeriodData | None = None) -> JacPoint:
    """Abel–Jacobi image of div(f); zero by Abel's theorem."""
    G = G or f.graph
    P = P or period_matrix(G)
    return abel_jacobi(divisor_of(f, G), None, P)
