"""Families of tropical curves: Hodge bundle, Gauss–Manin derivative and normal functions.

Edge lengths and mark offsets are affine in the parameters ``s``.  A local
lift of the Abel–Jacobi section is computed chart-wise along a spanning tree
of the template graph, so it is an affine vector function of ``s`` and every
derivative is exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .graphcurve import (
    Divisor,
    GraphPoint,
    MetricGraph,
    canonical_divisor,
    genus,
    spanning_tree,
    tree_path,
)
from .jacobian import JacPoint, PeriodData, abel_jacobi, cycle_basis, gram, period_matrix, reduce_mod_lattice
from .tropnum import format_rat, rat


class DegenerationError(ValueError):
    """Raised when a parameter point makes some edge lengths vanish."""

    def __init__(self, edges: list[int], s):
        self.edges = edges
        super().__init__(f"edges {edges} degenerate at s = {[format_rat(x) for x in s]}")


@dataclass(frozen=True)
class Affine:
    """``const + sum_k coeffs[k] * s_k``."""

    const: Fraction
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "const", rat(self.const))
        object.__setattr__(self, "coeffs", tuple(rat(c) for c in self.coeffs))

    @classmethod
    def constant(cls, c, d: int) -> "Affine":
        return cls(rat(c), (Fraction(0),) * d)

    def __call__(self, s) -> Fraction:
        return self.const + sum((c * rat(x) for c, x in zip(self.coeffs, s)), Fraction(0))

    def __add__(self, other: "Affine") -> "Affine":
        return Affine(self.const + other.const, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Affine") -> "Affine":
        return self + other * -1

    def __mul__(self, c) -> "Affine":
        c = rat(c)
        return Affine(self.const * c, tuple(a * c for a in self.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.const == 0 and all(c == 0 for c in self.coeffs)

    def to_dict(self) -> dict:
        return {"const": format_rat(self.const), "coeffs": [format_rat(c) for c in self.coeffs]}


def _zero(d: int) -> Affine:
    return Affine.constant(0, d)


@dataclass(frozen=True)
class Mark:
    """A marked point: a fixed vertex, or an affine offset along an edge."""

    vertex: int | None = None
    edge: int | None = None
    offset: Affine | None = None


@dataclass(frozen=True)
class CurveFamily:
    """Template graph with affine edge lengths over an open polyhedral cone.

    ``cone`` holds ``(normal, offset)`` pairs meaning ``<normal, s> > offset``
    on the interior.
    """

    graph: MetricGraph
    lengths: tuple
    cone: tuple = ()
    marks: tuple = ()
    basis: tuple = None

    def __post_init__(self):
        if len(self.lengths) != self.graph.n_edges:
            raise ValueError("one length expression per edge is required")
        d = {len(l.coeffs) for l in self.lengths}
        if len(d) > 1:
            raise ValueError("length expressions disagree on the number of parameters")
        if self.basis is None:
            object.__setattr__(self, "basis", tuple(tuple(b) for b in cycle_basis(self.graph)))

    @property
    def n_params(self) -> int:
        return len(self.lengths[0].coeffs) if self.lengths else 0

    @property
    def genus(self) -> int:
        return genus(self.graph)

    def in_cone(self, s) -> bool:
        return all(la.dot(n, s) > b for n, b in self.cone)

    def lengths_at(self, s) -> list[Fraction]:
        return [l(s) for l in self.lengths]

    def fiber(self, s) -> MetricGraph:
        s = [rat(x) for x in s]
        if len(s) != self.n_params:
            raise ValueError(f"expected {self.n_params} parameters")
        ls = self.lengths_at(s)
        bad = [e for e, l in enumerate(ls) if l <= 0]
        if bad:
            raise DegenerationError(bad, s)
        if not self.in_cone(s):
            raise ValueError(f"s = {[format_rat(x) for x in s]} is not in the open parameter cone")
        G = self.graph
        return MetricGraph(G.vertex_weights, tuple((u, v, l) for (u, v, _), l in zip(G.edges, ls)),
                           allow_leaves=G.allow_leaves)

    def mark_point(self, j: int, s) -> GraphPoint:
        m = self.marks[j]
        if m.vertex is not None:
            return GraphPoint(vertex=m.vertex)
        G = self.fiber(s)
        t = m.offset(s)
        if not 0 <= t <= G.length(m.edge):
            raise ValueError(f"mark {j} leaves edge {m.edge} at s = {s}")
        return G.point(m.edge, t)

    def gram_matrix(self) -> tuple[list, list]:
        """Q(s) = Q0 + sum_k s_k Q_k as (Q0, [Q_1, ..., Q_d])."""
        Q0 = gram(self.basis, [l.const for l in self.lengths])
        Qk = [gram(self.basis, [l.coeffs[k] for l in self.lengths]) for k in range(self.n_params)]
        return Q0, Qk


def hodge_bundle(F: CurveFamily, s) -> PeriodData:
    """Period data of the fiber over s (the cycle space is the F^1 piece of H^1)."""
    return period_matrix(F.fiber(s), basis=F.basis)


def gauss_manin(F: CurveFamily, direction: int) -> list[list[Fraction]]:
    """Exact derivative of the period matrix along ``s_direction`` (0-based)."""
    if not 0 <= direction < F.n_params:
        raise ValueError(f"direction {direction} out of range for {F.n_params} parameters")
    return [[Fraction(x) for x in row] for row in F.gram_matrix()[1][direction]]


# ---------------------------------------------------------------- divisor families and sections

@dataclass(frozen=True)
class DivisorFamily:
    """Integer combination of marks and fixed vertices: ``(("mark", j) | ("vertex", v), mult)``."""

    terms: tuple

    def __post_init__(self):
        terms = []
        for (kind, idx), m in self.terms:
            if kind not in ("mark", "vertex"):
                raise ValueError(f"unknown point kind {kind!r}")
            terms.append(((kind, int(idx)), int(m)))
        object.__setattr__(self, "terms", tuple(terms))

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.terms)

    def __add__(self, other: "DivisorFamily") -> "DivisorFamily":
        return DivisorFamily(self.terms + other.terms)

    def __mul__(self, c: int) -> "DivisorFamily":
        return DivisorFamily(tuple((p, c * m) for p, m in self.terms))

    __rmul__ = __mul__

    def at(self, F: CurveFamily, s) -> Divisor:
        out = []
        for (kind, idx), m in self.terms:
            p = F.mark_point(idx, s) if kind == "mark" else GraphPoint(vertex=idx)
            out.append((p, m))
        return Divisor(out)

    def multidegree(self, F: CurveFamily) -> list[int]:
        comp = F.graph.component_of()
        out = [0] * (max(comp) + 1)
        for (kind, idx), m in self.terms:
            if kind == "vertex":
                v = idx
            else:
                mk = F.marks[idx]
                v = mk.vertex if mk.vertex is not None else F.graph.edges[mk.edge][0]
            out[comp[v]] += m
        return out


@dataclass(frozen=True)
class NormalFunctionSection:
    """``s -> AJ(Z_s)`` on the fibers of a family."""

    family: CurveFamily
    divisor: DivisorFamily
    cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __call__(self, s) -> JacPoint:
        key = tuple(rat(x) for x in s)
        if key not in self.cache:
            P = hodge_bundle(self.family, key)
            self.cache[key] = abel_jacobi(self.divisor.at(self.family, key), None, P)
        return self.cache[key]

    def lift(self, chart: tuple[int, int] = (0, 0)) -> list[Affine]:
        """Affine lift of the section in the spanning-tree chart ``(root, side)``.

        Every point is joined to ``root`` through the BFS tree; a mark on edge
        e is reached from the tail of e (side 0) or from its head (side 1).
        """
        F = self.family
        d = F.n_params
        G = F.graph
        root, side = chart
        segs = [(u, v, l) for u, v, l in G.edges]
        parent, _, _ = spanning_tree(G.n_vertices, segs, root)
        chain = [_zero(d) for _ in range(G.n_edges)]

        def add_path(v, m):
            for e, sg in tree_path(segs, parent, v):
                chain[e] = chain[e] + F.lengths[e] * (sg * m)

        for (kind, idx), m in self.divisor.terms:
            if kind == "vertex":
                add_path(idx, m)
                continue
            mk = F.marks[idx]
            if mk.vertex is not None:
                add_path(mk.vertex, m)
            elif side == 0:
                add_path(G.edges[mk.edge][0], m)
                chain[mk.edge] = chain[mk.edge] + mk.offset * m
            else:
                add_path(G.edges[mk.edge][1], m)
                chain[mk.edge] = chain[mk.edge] - (F.lengths[mk.edge] - mk.offset) * m
        out = []
        for b in F.basis:
            acc = _zero(d)
            for e, c in enumerate(b):
                if c:
                    acc = acc + chain[e] * c
            out.append(acc)
        return out


def normal_function(F: CurveFamily, Z: DivisorFamily) -> NormalFunctionSection:
    if Z.degree != 0:
        raise ValueError("normal functions need a degree-0 divisor family")
    return NormalFunctionSection(F, Z)


def universal_sections(F: CurveFamily, j: int, k: int | None = None) -> NormalFunctionSection:
    """``K_j = (2g-2) x_j - K`` when k is None, else ``D_{j,k} = x_j - x_k``."""
    n = len(F.marks)
    for idx in (j,) if k is None else (j, k):
        if not 0 <= idx < n:
            raise ValueError(f"mark index {idx} out of range (family has {n} marks)")
    if k is not None:
        return normal_function(F, DivisorFamily(((("mark", j), 1), (("mark", k), -1))))
    g = F.genus
    if g < 1:
        raise ValueError("K_j needs genus >= 1")
    K = canonical_divisor(F.graph)
    terms = [(("mark", j), 2 * g - 2)] + [(("vertex", p.vertex), -m) for p, m in K.items()]
    return normal_function(F, DivisorFamily(tuple(terms)))


def canonical_combination(F: CurveFamily, weights: Sequence[int]) -> NormalFunctionSection:
    """``sum_j c_j ((2g-2) x_j - K)``: degree 0 for any integer weights."""
    terms = []
    for j, c in enumerate(weights):
        if c:
            terms += [(p, c * m) for p, m in universal_sections(F, j).divisor.terms]
    return normal_function(F, DivisorFamily(tuple(terms)))


# ---------------------------------------------------------------- infinitesimal invariants

def _lattice_derivative_generators(F: CurveFamily, directions: Sequence[int]) -> list[list[Fraction]]:
    """For each basis vector e_i the stacked vector (dQ/ds_k e_i)_k."""
    _, Qk = F.gram_matrix()
    g = len(F.basis)
    gens = []
    for i in range(g):
        vec = []
        for k in directions:
            vec += [Fraction(Qk[k][r][i]) for r in range(g)]
        gens.append(vec)
    return gens


@dataclass
class InfinitesimalReport:
    order: int
    directions: list  # tuples of parameter indices
    values: list  # one vector per direction tuple (period coordinates)
    vanishes: bool
    quotient: str

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "directions": [list(d) for d in self.directions],
            "values": [[format_rat(x) for x in v] for v in self.values],
            "vanishes": self.vanishes,
            "quotient": self.quotient,
        }


def infinitesimal_invariant(nu: NormalFunctionSection, order: int = 1, chart=(0, 0)) -> InfinitesimalReport:
    """Iterated derivatives of the affine lift, reduced modulo lattice derivatives.

    Two lifts differ by ``Q(s) m`` with m integral, so first derivatives are
    defined modulo ``{(dQ/ds_k m)_k : m in Z^g}``.  Lifts are affine, so every
    derivative of order >= 2 is zero.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    F = nu.family
    d = F.n_params
    g = len(F.basis)
    lift = nu.lift(chart)
    if order == 1:
        dirs = [(k,) for k in range(d)]
        values = [[lift[r].coeffs[k] for r in range(g)] for k in range(d)]
        stacked = [x for v in values for x in v]
        vanishes = la.in_integer_span(_lattice_derivative_generators(F, range(d)), stacked) if g else True
        quotient = "modulo the integer span of (dQ/ds_k m)_k for m in Z^g"
    else:
        import itertools

        dirs = list(itertools.combinations_with_replacement(range(d), order))
        values = [[Fraction(0)] * g for _ in dirs]
        vanishes = True
        quotient = "lift and periods are affine in s; derivatives of order >= 2 vanish identically"
    return InfinitesimalReport(order, dirs, values, vanishes, quotient)


def is_zero_section(nu: NormalFunctionSection, s0=None) -> tuple[bool, list | None]:
    """Decide whether the section vanishes on the whole cone.

    It does iff ``z0 = Q(s0)^{-1} lift(s0)`` is integral and
    ``lift(s) = Q(s) z0`` holds as an affine identity.  Returns (flag, z0).
    """
    F = nu.family
    g = len(F.basis)
    if g == 0:
        return True, []
    lift = nu.lift()
    if s0 is None:
        s0 = interior_point(F)
    Q0, Qk = F.gram_matrix()
    Qs = hodge_bundle(F, s0).matrix()
    z0 = la.solve(Qs, [a(s0) for a in lift])
    if any(z.denominator != 1 for z in z0):
        return False, z0
    for r in range(g):
        if lift[r].const != la.dot(Q0[r], z0):
            return False, z0
        for k in range(F.n_params):
            if lift[r].coeffs[k] != la.dot(Qk[k][r], z0):
                return False, z0
    return True, z0


def interior_point(F: CurveFamily, rng: random.Random | None = None, tries: int = 2000):
    """A rational point of the open cone where all lengths are positive."""
    rng = rng or random.Random(0)
    d = F.n_params
    cands = [[Fraction(1)] * d, [Fraction(2)] * d]
    for _ in range(tries):
        cands.append([Fraction(rng.randint(-20, 40), rng.randint(1, 5)) for _ in range(d)])
    for s in cands:
        if F.in_cone(s) and all(l(s) > 0 for l in F.lengths):
            return s
    raise ValueError("could not find an interior point of the parameter cone")


@dataclass
class BBLevel:
    level: int
    certificate: dict

    def to_dict(self) -> dict:
        return {"level": self.level, "certificate": self.certificate}


def bb_level(nu: NormalFunctionSection, max_order: int = 2) -> BBLevel:
    """Least i <= max_order with a nonvanishing invariant Psi_i.

    Psi_0 is the multidegree, Psi_1 the section itself, Psi_{i>=2} the
    order-(i-1) infinitesimal invariant.  Returns ``max_order + 1`` when all
    tested invariants vanish.
    """
    if max_order < 0:
        raise ValueError("max_order must be >= 0")
    if max_order > 2:
        raise ValueError("for curve fibers the filtration has length 2; max_order must be <= 2")
    F = nu.family
    md = nu.divisor.multidegree(F)
    if any(md):
        return BBLevel(0, {"invariant": "Psi_0", "multidegree": md})
    if max_order == 0:
        return BBLevel(1, {"invariant": None, "note": "all tested invariants vanish", "multidegree": md})
    zero, z0 = is_zero_section(nu)
    if not zero:
        s0 = interior_point(F)
        return BBLevel(1, {"invariant": "Psi_1", "s": [format_rat(x) for x in s0],
                           "value": nu(s0).to_dict()})
    cert = {"Psi_1": "zero", "lattice_vector": [int(z) for z in z0]}
    if max_order == 1:
        return BBLevel(2, {"invariant": None, "note": "all tested invariants vanish", **cert})
    rep = infinitesimal_invariant(nu, 1)
    if not rep.vanishes:
        return BBLevel(2, {"invariant": "Psi_2", **rep.to_dict()})
    return BBLevel(3, {"invariant": None, "note": "all tested invariants vanish", **cert})


# ---------------------------------------------------------------- family builders

def principal_family(F: CurveFamily, slopes: Sequence[tuple[int, int]]) -> tuple[CurveFamily, DivisorFamily]:
    """Family of principal divisors: one tent per edge, zero at every vertex.

    Edge e rises with slope a_e to a mark at offset ``b/(a+b) * l_e(s)`` and
    returns with slope -b_e, so the divisor ``a_e u + b_e v - (a_e+b_e) x_e``
    summed over edges is div(f_s) for every s.  Pairs with a + b = 0 are skipped.
    """
    marks = list(F.marks)
    terms = []
    for e, (a, b) in enumerate(slopes):
        if a + b == 0:
            continue
        r = Fraction(b, a + b)
        if not 0 < r < 1:
            raise ValueError(f"slopes {a}, {b} do not put the peak inside edge {e}")
        u, v, _ = F.graph.edges[e]
        marks.append(Mark(edge=e, offset=F.lengths[e] * r))
        terms += [(("vertex", u), a), (("vertex", v), b), (("mark", len(marks) - 1), -(a + b))]
    F2 = CurveFamily(F.graph, F.lengths, F.cone, tuple(marks), F.basis)
    return F2, DivisorFamily(tuple(terms))


def circle_family(mark_offsets: Sequence[Affine] = ()) -> CurveFamily:
    """One loop of length s over s > 0."""
    G = MetricGraph((0,), ((0, 0, 1),))
    marks = tuple(Mark(edge=0, offset=o) for o in mark_offsets)
    return CurveFamily(G, (Affine(0, (1,)),), (((Fraction(1),), Fraction(0)),), marks)


def evaluate_grid(nu: NormalFunctionSection, points) -> list[dict]:
    """Rows of parameter values, reduced section coordinates and first derivatives."""
    rep = infinitesimal_invariant(nu, 1)
    rows = []
    for s in points:
        jp = nu(s)
        rows.append({"s": [rat(x) for x in s], "coords": list(jp.coords), "delta": [x for v in rep.values for x in v]})
    return rows
