"""Weighted rational polyhedral complexes and the balancing condition.

Polyhedra are stored in H-representation (``<normal, x> >= offset`` and
``<normal, x> = offset``).  The V-representation is computed on demand by
brute-force double description, which is exact and fast enough in the
dimensions used here (ambient dimension at most 3).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg as la
from .tropnum import rat

Vec = tuple


def _vec(v) -> tuple[Fraction, ...]:
    return tuple(rat(x) for x in v)


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _scale(c, u):
    return tuple(c * a for a in u)


def _canonical_subspace(vectors, n) -> tuple:
    """Canonical RREF key of a linear span."""
    vecs = [list(map(Fraction, v)) for v in vectors]
    if not vecs:
        return ()
    R, piv = la.rref(vecs)
    return tuple(tuple(row) for row in R[: len(piv)])


def hermite_basis(vectors: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Canonical (Hermite normal form) basis of the lattice spanned by integer vectors."""
    vecs = [list(map(int, v)) for v in vectors]
    if not vecs:
        return []
    BT = [[v[i] for v in vecs] for i in range(n)]
    H, _, r = la.column_hermite(BT)
    cols = [[H[i][c] for i in range(n)] for c in range(r)]
    pivots = []
    for c in cols:
        p = next(i for i, x in enumerate(c) if x != 0)
        if c[p] < 0:
            c[:] = [-x for x in c]
        pivots.append(p)
    for c2 in range(r):
        p, piv = pivots[c2], cols[c2][pivots[c2]]
        for c1 in range(c2):
            q = cols[c1][p] // piv
            if q:
                cols[c1] = [a - q * b for a, b in zip(cols[c1], cols[c2])]
    return [tuple(c) for c in cols]


def lattice_of(vectors, n) -> list[tuple[int, ...]]:
    """Canonical basis of span_Q(vectors) ∩ Z^n."""
    return hermite_basis(la.saturated_lattice_basis(vectors, n), n)


def reduce_mod_lattice(u, basis) -> tuple:
    """Deterministic representative of u modulo the lattice spanned by ``basis``.

    Coordinates of the orthogonal projection of u in the (Hermite) basis are
    moved into [-1/2, 1/2).
    """
    u = tuple(Fraction(x) for x in u)
    if not basis:
        return u
    B = [list(map(Fraction, b)) for b in basis]
    G = [[_dot(bi, bj) for bj in B] for bi in B]
    rhs = [_dot(bi, u) for bi in B]
    c = la.solve(G, rhs)
    for ci, bi in zip(c, B):
        k = math.floor(ci + Fraction(1, 2))
        if k:
            u = tuple(a - k * b for a, b in zip(u, bi))
    return u


@dataclass(frozen=True, eq=False)
class Polyhedron:
    """Rational polyhedron ``{x : <a, x> >= b for ineqs, <a, x> = b for eqs}``."""

    ambient_dim: int
    ineqs: tuple = ()
    eqs: tuple = ()

    def __post_init__(self):
        norm = lambda rows: tuple((_vec(a), rat(b)) for a, b in rows)
        object.__setattr__(self, "ineqs", norm(self.ineqs))
        object.__setattr__(self, "eqs", norm(self.eqs))
        for a, _ in self.ineqs + self.eqs:
            if len(a) != self.ambient_dim:
                raise ValueError("constraint normal has wrong length")

    # -- constructors ---------------------------------------------------
    @classmethod
    def space(cls, n: int) -> "Polyhedron":
        return cls(n)

    @classmethod
    def from_generators(cls, points, rays=(), lineality=()) -> "Polyhedron":
        """H-representation of conv(points) + cone(rays) + span(lineality)."""
        points = [_vec(p) for p in points]
        if not points:
            raise ValueError("a polyhedron needs at least one point")
        n = len(points[0])
        gens = [p + (Fraction(1),) for p in points]
        gens += [_vec(r) + (Fraction(0),) for r in rays]
        for l in lineality:
            l = _vec(l)
            gens += [l + (Fraction(0),), _scale(-1, l) + (Fraction(0),)]
        G = [list(g) for g in gens]
        W = la.nullspace(G, n + 1)
        r = n + 1 - len(W)
        eqs = []
        for w in W:
            w = la.primitive(w)
            eqs.append((w[:n], Fraction(-w[n])))
        ineqs = {}
        for sub in itertools.combinations(range(len(gens)), r - 1):
            rows = [G[i] for i in sub] + [list(map(Fraction, w)) for w in W]
            if la.rank(rows) != n:
                continue
            N = la.nullspace(rows, n + 1)
            a = N[0]
            vals = [_dot(a, g) for g in gens]
            if all(v >= 0 for v in vals):
                pass
            elif all(v <= 0 for v in vals):
                a = [-x for x in a]
            else:
                continue
            a = la.primitive(a)
            if all(x == 0 for x in a[:n]):
                continue
            key = a
            ineqs[key] = (a[:n], Fraction(-a[n]))
        return cls(n, tuple(ineqs[k] for k in sorted(ineqs)), tuple(eqs))

    @classmethod
    def point(cls, p) -> "Polyhedron":
        return cls.from_generators([p])

    @classmethod
    def segment(cls, p, q) -> "Polyhedron":
        return cls.from_generators([p, q])

    @classmethod
    def ray(cls, p, d) -> "Polyhedron":
        return cls.from_generators([p], rays=[d])

    @classmethod
    def line(cls, p, d) -> "Polyhedron":
        return cls.from_generators([p], lineality=[d])

    # -- V-representation ---------------------------------------------
    @cached_property
    def _vrep(self):
        n = self.ambient_dim
        normals = [list(a) for a, _ in self.ineqs + self.eqs]
        lin = la.nullspace(normals, n) if normals else la.nullspace([], n)
        lin_int = [la.primitive(l) for l in lin]
        eq_rows = [(list(a), b) for a, b in self.eqs] + [(list(map(Fraction, l)), Fraction(0)) for l in lin_int]
        E = [r for r, _ in eq_rows]
        eb = [b for _, b in eq_rows]
        rank_e = la.rank(E) if E else 0
        ineqs = self.ineqs
        verts = {}
        need = n - rank_e
        for sub in itertools.combinations(range(len(ineqs)), need):
            rows = E + [list(ineqs[i][0]) for i in sub]
            if la.rank(rows) != n:
                continue
            x = la.solve(rows, eb + [ineqs[i][1] for i in sub])
            if x is None:
                continue
            x = tuple(x)
            if self._feasible(x):
                verts[x] = None
        rays = {}
        if verts:
            need_r = n - 1 - rank_e
            if need_r >= 0:
                for sub in itertools.combinations(range(len(ineqs)), need_r):
                    rows = E + [list(ineqs[i][0]) for i in sub]
                    if la.rank(rows) != n - 1:
                        continue
                    d = la.nullspace(rows, n)[0]
                    for s in (1, -1):
                        dd = tuple(s * x for x in d)
                        if all(_dot(a, dd) >= 0 for a, _ in ineqs):
                            rays[la.primitive(dd)] = None
        lineality = _canonical_subspace(lin_int, n)
        lin_basis = [la.primitive(row) for row in lineality]
        return tuple(sorted(verts)), tuple(sorted(rays)), tuple(lin_basis)

    def _feasible(self, x) -> bool:
        return all(_dot(a, x) >= b for a, b in self.ineqs) and all(_dot(a, x) == b for a, b in self.eqs)

    def contains(self, x) -> bool:
        return self._feasible(_vec(x))

    @property
    def vertices(self):
        return self._vrep[0]

    @property
    def rays(self):
        return self._vrep[1]

    @property
    def lineality(self):
        return self._vrep[2]

    def is_empty(self) -> bool:
        return not self.vertices

    @cached_property
    def tangent_vectors(self) -> list:
        if self.is_empty():
            return []
        v0 = self.vertices[0]
        vecs = [_sub(v, v0) for v in self.vertices[1:]] + list(self.rays) + list(self.lineality)
        vecs = [v for v in vecs if any(x != 0 for x in v)]
        if not vecs:
            return []
        R, piv = la.rref([list(map(Fraction, v)) for v in vecs])
        return [tuple(r) for r in R[: len(piv)]]

    @property
    def dim(self) -> int:
        if self.is_empty():
            return -1
        return len(self.tangent_vectors)

    @cached_property
    def lattice(self) -> list[tuple[int, ...]]:
        """Canonical basis of the tangent lattice N_sigma."""
        return lattice_of(self.tangent_vectors, self.ambient_dim)

    def relint_point(self) -> tuple:
        verts = self.vertices
        if not verts:
            raise ValueError("empty polyhedron")
        k = len(verts)
        p = tuple(sum(v[i] for v in verts) / k for i in range(self.ambient_dim))
        for r in self.rays:
            p = _add(p, r)
        return p

    def key(self) -> tuple:
        return (self.ambient_dim, self.dim, self.vertices, self.rays, self.lineality)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polyhedron) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def intersect(self, other: "Polyhedron") -> "Polyhedron":
        return Polyhedron(self.ambient_dim, self.ineqs + other.ineqs, self.eqs + other.eqs)

    def facets(self) -> list["Polyhedron"]:
        """Faces of codimension one, deduplicated, in deterministic order."""
        d = self.dim
        out = {}
        for i, (a, b) in enumerate(self.ineqs):
            F = Polyhedron(self.ambient_dim, self.ineqs[:i] + self.ineqs[i + 1:], self.eqs + ((a, b),))
            if F.dim == d - 1 and d > 0:
                out.setdefault(F.key(), F)
        return [out[k] for k in sorted(out, key=_sort_key)]

    def is_face_of(self, other: "Polyhedron") -> bool:
        if self.dim > other.dim:
            return False
        if self == other:
            return True
        todo = [other]
        while todo:
            P = todo.pop()
            for F in P.facets():
                if F == self:
                    return True
                if F.dim > self.dim:
                    todo.append(F)
        return False

    def __repr__(self) -> str:
        return f"Polyhedron(dim={self.dim}, vertices={list(self.vertices)}, rays={list(self.rays)}, lineality={list(self.lineality)})"


def _sort_key(key):
    # keys contain Fractions and ints only; repr-free deterministic ordering
    return (key[1], key[2], key[3], key[4])


@dataclass
class WeightedComplex:
    """Rational polyhedral complex with integer weights on (some) cells.

    ``incidence`` holds pairs ``(tau, sigma)`` of cell indices with ``tau`` a
    facet of ``sigma``.
    """

    ambient_dim: int
    cells: list = field(default_factory=list)
    incidence: list = field(default_factory=list)
    weights: dict = field(default_factory=dict)

    @classmethod
    def from_top_cells(cls, ambient_dim: int, top_cells, weights) -> "WeightedComplex":
        """Close a list of weighted cells under taking faces."""
        index: dict = {}
        cells: list = []
        incidence = set()

        def add(P):
            k = P.key()
            if k in index:
                return index[k], False
            index[k] = len(cells)
            cells.append(P)
            return index[k], True

        w = {}
        todo = []
        for P, wt in zip(top_cells, weights):
            i, new = add(P)
            w[i] = w.get(i, 0) + int(wt)
            if new:
                todo.append(i)
        while todo:
            i = todo.pop()
            for F in cells[i].facets():
                j, new = add(F)
                incidence.add((j, i))
                if new:
                    todo.append(j)
        # deterministic order: by dimension then canonical key
        order = sorted(range(len(cells)), key=lambda i: _sort_key(cells[i].key()))
        remap = {old: new for new, old in enumerate(order)}
        return cls(
            ambient_dim,
            [cells[i] for i in order],
            sorted((remap[a], remap[b]) for a, b in incidence),
            {remap[i]: wt for i, wt in sorted(w.items()) if wt != 0},
        )

    def dims(self) -> list[int]:
        return [c.dim for c in self.cells]

    @property
    def top_dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def cofaces(self, i: int) -> list[int]:
        return [s for t, s in self.incidence if t == i]

    def faces(self, j: int) -> list[int]:
        return [t for t, s in self.incidence if s == j]

    def index_of(self, P: Polyhedron) -> int:
        k = P.key()
        for i, c in enumerate(self.cells):
            if c.key() == k:
                return i
        raise KeyError("cell not in complex")

    def validate(self) -> None:
        """Raise ValueError when the incidence data is inconsistent."""
        n = len(self.cells)
        for t, s in self.incidence:
            if not (0 <= t < n and 0 <= s < n):
                raise ValueError(f"incidence pair ({t}, {s}) out of range")
            if self.cells[t].dim != self.cells[s].dim - 1:
                raise ValueError(f"incidence pair ({t}, {s}) does not drop dimension by one")
            if not self.cells[t].is_face_of(self.cells[s]):
                raise ValueError(f"cell {t} is not a face of cell {s}")
        for i in self.weights:
            if not 0 <= i < n:
                raise ValueError(f"weight on unknown cell {i}")
        for c in self.cells:
            if c.is_empty():
                raise ValueError("complex contains an empty cell")

    def top_cells(self) -> list[int]:
        d = self.top_dim
        return [i for i, c in enumerate(self.cells) if c.dim == d]

    def __add__(self, other: "WeightedComplex") -> "WeightedComplex":
        """Sum of tropical cycles of equal dimension (weights add on common cells)."""
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimensions differ")
        tops, ws = [], []
        for X in (self, other):
            for i, wt in X.weights.items():
                tops.append(X.cells[i])
                ws.append(wt)
        return WeightedComplex.from_top_cells(self.ambient_dim, tops, ws)

    def weighted_cells(self) -> dict:
        """Map canonical cell key -> weight (for comparisons between complexes)."""
        return {self.cells[i].key(): w for i, w in self.weights.items() if w != 0}


# ---------------------------------------------------------------- operations

def primitive_normal(sigma: Polyhedron, tau: Polyhedron) -> tuple[int, ...]:
    """Primitive lattice vector of N_sigma generating N_sigma / N_tau, pointing into sigma.

    The representative is reduced modulo N_tau to a fixed fundamental domain.
    """
    if sigma.dim != tau.dim + 1 or not tau.is_face_of(sigma):
        raise ValueError("tau is not a codimension-one face of sigma")
    n = sigma.ambient_dim
    Bs = [list(map(Fraction, b)) for b in sigma.lattice]
    Bt = tau.lattice
    BsT = la.transpose(Bs)
    M = []
    for b in Bt:
        y = la.solve(BsT, b)
        M.append([int(c) for c in y])
    d = len(Bs)
    kern = la.integer_kernel(M, d) if M else [[int(i == j) for i in range(d)] for j in range(d)]
    if len(kern) != 1:
        raise ValueError("face lattice does not have corank one")
    phi = kern[0]
    y0 = la.bezout_vector(phi)
    u = tuple(sum(Fraction(y0[k]) * Bs[k][i] for k in range(d)) for i in range(n))
    w = _sub(sigma.relint_point(), tau.relint_point())
    wc = la.solve(BsT, w)
    if _dot(phi, wc) < 0:
        u = _scale(-1, u)
    u = reduce_mod_lattice(u, Bt)
    return tuple(int(x) for x in u)


@dataclass
class BalanceReport:
    balanced: bool
    codim: int
    defects: dict  # tau index -> defect vector reduced modulo N_tau

    def to_dict(self) -> dict:
        from .tropnum import format_rat

        return {
            "balanced": self.balanced,
            "codim": self.codim,
            "defects": {str(k): [format_rat(x) for x in v] for k, v in sorted(self.defects.items())},
        }


def check_balanced(X: WeightedComplex, k: int | None = None) -> BalanceReport:
    """Balancing at every codimension-(k+1) cell, modulo the span of that cell.

    ``k`` is the codimension of the weighted cells; it defaults to the
    codimension of the top-dimensional cells.
    """
    n = X.ambient_dim
    if k is None:
        k = n - X.top_dim
    top_dim = n - k
    top = {i for i, c in enumerate(X.cells) if c.dim == top_dim}
    missing = [i for i in top if i not in X.weights]
    if missing:
        raise ValueError(f"weights missing on codimension-{k} cells {sorted(missing)}")
    defects = {}
    ok = True
    for t, tau in enumerate(X.cells):
        if tau.dim != top_dim - 1:
            continue
        total = (Fraction(0),) * n
        for s in X.cofaces(t):
            if s not in top:
                raise ValueError(f"incidence pair ({t}, {s}) is not codimension one")
            nv = primitive_normal(X.cells[s], tau)
            total = _add(total, _scale(X.weights[s], nv))
        red = reduce_mod_lattice(total, tau.lattice)
        in_span = la.rank([list(r) for r in tau.tangent_vectors] + [list(total)]) == len(tau.tangent_vectors)
        if not in_span:
            ok = False
        defects[t] = tuple(Fraction(0) for _ in range(n)) if in_span else red
    return BalanceReport(ok, k, defects)


@dataclass(frozen=True)
class TropRegularFunction:
    """``f = min_j (<alpha_j, x> + beta_j)`` with integer slopes."""

    pieces: tuple

    def __post_init__(self):
        pcs = tuple((tuple(int(a) for a in alpha), rat(beta)) for alpha, beta in self.pieces)
        if not pcs:
            raise ValueError("a tropical regular function needs at least one piece")
        object.__setattr__(self, "pieces", pcs)

    @property
    def n(self) -> int:
        return len(self.pieces[0][0])

    def __call__(self, x) -> Fraction:
        return min(_dot(a, x) + b for a, b in self.pieces)

    def active(self, x) -> list[int]:
        vals = [_dot(a, x) + b for a, b in self.pieces]
        m = min(vals)
        return [j for j, v in enumerate(vals) if v == m]

    def __mul__(self, other: "TropRegularFunction") -> "TropRegularFunction":
        """Tropical product (pointwise sum)."""
        return TropRegularFunction(tuple(
            (tuple(a + c for a, c in zip(a1, a2)), b1 + b2)
            for a1, b1 in self.pieces for a2, b2 in other.pieces
        ))


def divisor_of_function(f: TropRegularFunction, Z: WeightedComplex) -> WeightedComplex:
    """Tropical divisor of a min-form regular function on a weighted complex.

    Weights follow the slope-difference formula with the sign fixed so that
    ``min(0, x)`` on the real line has a zero of weight +1 (min-plus
    convention: divisors of tropical polynomials are effective).
    """
    n = Z.ambient_dim
    if f.n != n:
        raise ValueError("function and complex live in different ambient spaces")
    d = Z.top_dim
    pieces = {}
    for s in Z.top_cells():
        sigma = Z.cells[s]
        w = Z.weights.get(s, 0)
        if w == 0:
            continue
        for j, (aj, bj) in enumerate(f.pieces):
            ineqs = tuple(
                (tuple(Fraction(y - x) for x, y in zip(aj, ak)), bj - bk)
                for k, (ak, bk) in enumerate(f.pieces) if k != j
            )
            P = Polyhedron(n, sigma.ineqs + ineqs, sigma.eqs)
            if P.dim != d:
                continue
            key = P.key()
            if key in pieces:
                continue
            act = f.active(P.relint_point())
            lin = {tuple(_dot(f.pieces[a][0], t) for t in P.tangent_vectors) for a in act}
            if len(lin) != 1:
                raise ValueError("function is not affine on a refined cell")
            pieces[key] = (P, w, f.pieces[act[0]][0])
    walls: dict = {}
    for P, w, alpha in pieces.values():
        for F in P.facets():
            walls.setdefault(F.key(), [F, []])[1].append((P, w, alpha))
    tops, weights = [], []
    for key in sorted(walls, key=_sort_key):
        tau, adj = walls[key]
        total = (Fraction(0),) * n
        acc = Fraction(0)
        for P, w, alpha in adj:
            nv = primitive_normal(P, tau)
            acc += w * _dot(alpha, nv)
            total = _add(total, _scale(w, nv))
        act = f.active(tau.relint_point())
        acc -= _dot(f.pieces[act[0]][0], total)
        weight = -acc
        if weight != 0:
            if weight.denominator != 1:
                raise ValueError("non-integral divisor weight")
            tops.append(tau)
            weights.append(int(weight))
    return WeightedComplex.from_top_cells(n, tops, weights)


# ---------------------------------------------------------------- fan structures

@dataclass
class FanReport:
    kernel_condition: bool
    submersion: bool
    fan: bool
    support_convex: bool
    details: list

    @property
    def passed(self) -> bool:
        return self.kernel_condition and self.submersion and self.fan

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "axioms": {"kernel": self.kernel_condition, "submersion": self.submersion, "fan": self.fan},
            "support_convex": self.support_convex,
            "details": list(self.details),
        }


def _cone_from_generators(gens, k) -> Polyhedron:
    gens = [g for g in gens if any(x != 0 for x in g)]
    return Polyhedron.from_generators([(Fraction(0),) * k], rays=gens)


def _all_faces(P: Polyhedron) -> list[Polyhedron]:
    seen = {P.key(): P}
    todo = [P]
    while todo:
        Q = todo.pop()
        for F in Q.facets():
            if F.key() not in seen:
                seen[F.key()] = F
                todo.append(F)
    return list(seen.values())


def star_and_fan_check(X: WeightedComplex, tau: int, St) -> FanReport:
    """Check the fan-structure axioms for an affine chart ``x -> A x + b`` on star(tau).

    ``St`` is a pair ``(A, b)`` with ``A`` a k×n rational matrix.  Convexity of
    the support of the resulting fan is reported separately and does not
    enter the verdict.
    """
    if not 0 <= tau < len(X.cells):
        raise ValueError("tau is not a cell of the complex")
    A, b = St
    A = [list(map(rat, row)) for row in A]
    b = [rat(x) for x in b]
    k = len(A)
    T = X.cells[tau]
    apply = lambda x: tuple(v + c for v, c in zip(la.matvec(A, x), b)) if k else ()
    lin = lambda x: tuple(la.matvec(A, x)) if k else ()
    # cells of the star: all cells containing tau
    star = [i for i, c in enumerate(X.cells) if T.is_face_of(c)]
    details = []
    zero = (Fraction(0),) * k
    kernel_ok = all(apply(v) == zero for v in T.vertices) and all(
        lin(r) == zero for r in list(T.rays) + list(T.lineality)
    )
    if not kernel_ok:
        details.append("St does not send tau to 0")
    sub_ok = True
    cones = []
    for i in star:
        sigma = X.cells[i]
        images = [lin(t) for t in sigma.tangent_vectors]
        r = la.rank([list(v) for v in images]) if images and k else 0
        # ker(A) ∩ T_sigma = T_tau  <=>  rank of A on T_sigma = dim sigma - dim tau
        if r != sigma.dim - T.dim:
            sub_ok = False
            kernel_ok = False
            details.append(f"cell {i}: image dimension {r} != {sigma.dim - T.dim}")
        gens = [apply(v) for v in sigma.vertices] + [lin(rr) for rr in sigma.rays]
        for l in sigma.lineality:
            gens += [lin(l), tuple(-x for x in lin(l))]
        cones.append((i, _cone_from_generators(gens, k) if k else None))
    if k == 0:
        return FanReport(kernel_ok, sub_ok, True, True, details)
    fan_ok = True
    keys = {C.key() for _, C in cones}
    faces = {i: {F.key() for F in _all_faces(C)} for i, C in cones}
    for i, C in cones:
        if not faces[i] <= keys:
            fan_ok = False
            details.append(f"cone of cell {i} has a face outside the collection")
    for (i, C1), (j, C2) in itertools.combinations(cones, 2):
        I = C1.intersect(C2)
        if I.key() not in faces[i] or I.key() not in faces[j]:
            fan_ok = False
            details.append(f"cones of cells {i} and {j} meet outside a common face")
    convex = _support_convex([C for _, C in cones], k)
    return FanReport(kernel_ok, sub_ok, fan_ok, convex, details)


def _support_convex(cones, k) -> bool:
    """Exact convexity test for a finite union of polyhedral cones.

    The union equals the cone over all generators iff every open chamber of
    the arrangement of facet hyperplanes inside that cone is covered.
    """
    gens = []
    for C in cones:
        gens += list(C.rays) + list(C.lineality) + [tuple(-x for x in l) for l in C.lineality]
    hull = _cone_from_generators(gens, k)
    hyper = {}
    for C in cones:
        for a, _ in C.ineqs + C.eqs:
            hyper[la.primitive(a)] = None
    hyper = list(hyper)
    for signs in itertools.product((1, -1), repeat=len(hyper)):
        ineqs = tuple((_scale(s, h), Fraction(0)) for s, h in zip(signs, hyper))
        R = Polyhedron(k, hull.ineqs + ineqs, hull.eqs)
        if R.dim != hull.dim:
            continue
        p = R.relint_point()
        if not any(C.contains(p) for C in cones):
            return False
    return True
