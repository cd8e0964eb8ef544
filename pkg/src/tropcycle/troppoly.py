"""Tropical polynomials, Newton polytopes and tropical hypersurfaces (min-plus)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import linalg as la
from .polycx import Polyhedron, WeightedComplex
from .tropnum import INF, TropNum, rat, trop


@dataclass(frozen=True)
class TropPoly:
    """``f(x) = min_j (coeff_j + <exp_j, x>)``."""

    n_vars: int
    terms: tuple  # ((exp tuple, coeff Fraction), ...) sorted by exponent

    def __post_init__(self):
        if self.n_vars < 1:
            raise ValueError("n_vars must be positive")
        terms = []
        seen = set()
        for e, c in self.terms:
            e = tuple(int(x) for x in e)
            if len(e) != self.n_vars:
                raise ValueError(f"exponent {e} has wrong length")
            if e in seen:
                raise ValueError(f"duplicate exponent {e}")
            seen.add(e)
            terms.append((e, rat(c)))
        if not terms:
            raise ValueError("a tropical polynomial needs at least one term")
        object.__setattr__(self, "terms", tuple(sorted(terms)))

    @classmethod
    def merged(cls, n_vars: int, terms) -> "TropPoly":
        """Build from terms that may repeat exponents, keeping the tropical sum (min)."""
        best: dict = {}
        for e, c in terms:
            e, c = tuple(int(x) for x in e), rat(c)
            if e not in best or c < best[e]:
                best[e] = c
        return cls(n_vars, tuple(best.items()))

    @classmethod
    def from_dict(cls, d: dict) -> "TropPoly":
        """Build from ``{exponent: coeff}``; exponents may be ints for one variable."""
        items = [((e,) if isinstance(e, int) else tuple(e), c) for e, c in d.items()]
        return cls(len(items[0][0]), tuple(items))

    @property
    def support(self) -> list[tuple[int, ...]]:
        return [e for e, _ in self.terms]

    def __call__(self, x) -> TropNum:
        return evaluate(self, x)


def evaluate(f: TropPoly, x) -> TropNum:
    """Minimum over terms of ``coeff + <exp, x>``; coordinates may be INF."""
    x = [trop(v) for v in x]
    if len(x) != f.n_vars:
        raise ValueError(f"expected {f.n_vars} coordinates, got {len(x)}")
    best: TropNum = INF
    for e, c in f.terms:
        if any(ei and xi is INF for ei, xi in zip(e, x)):
            continue  # the term is the tropical zero there
        v = c + sum((ei * xi for ei, xi in zip(e, x) if ei), Fraction(0))
        if best is INF or v < best:
            best = v
    return best


# ---------------------------------------------------------------- Newton polytope

@dataclass(frozen=True)
class NewtonPolytope:
    vertices: tuple
    dimension: int


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(points):
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _affine_dim(points) -> int:
    if len(points) <= 1:
        return 0
    p0 = points[0]
    return la.rank([[Fraction(a - b) for a, b in zip(p, p0)] for p in points[1:]])


def _in_hull(p, others) -> bool:
    """Exact membership of p in conv(others) via Carathéodory subsets."""
    d = len(p)
    for k in range(1, min(len(others), d + 1) + 1):
        for sub in itertools.combinations(others, k):
            # solve sum l_i q_i = p, sum l_i = 1
            A = [[Fraction(q[i]) for q in sub] for i in range(d)] + [[Fraction(1)] * k]
            b = [Fraction(x) for x in p] + [Fraction(1)]
            if la.rank(A) != k:
                continue
            lam = la.solve(A, b)
            if lam is not None and all(l >= 0 for l in lam):
                return True
    return False


def newton_polytope(f: TropPoly) -> NewtonPolytope:
    """Extreme points of the convex hull of the support."""
    pts = sorted(set(f.support))
    dim = _affine_dim(pts)
    if f.n_vars == 1:
        verts = [pts[0], pts[-1]] if len(pts) > 1 else pts
    elif f.n_vars == 2 and dim == 2:
        verts = sorted(_hull_2d(pts))
    else:
        verts = [p for p in pts if not _in_hull(p, [q for q in pts if q != p])]
    return NewtonPolytope(tuple(sorted(verts)), dim)


# ---------------------------------------------------------------- hypersurfaces

def _lower_hull(points):
    """Lower convex hull of (x, y) points with distinct x, strict vertices only."""
    pts = sorted(points)
    hull = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return hull


def tropical_roots(f: TropPoly) -> list[tuple[Fraction, int]]:
    """Weighted corner locus of a univariate tropical polynomial, sorted by position."""
    if f.n_vars != 1:
        raise ValueError("tropical_roots expects one variable")
    hull = _lower_hull([(e[0], c) for e, c in f.terms])
    roots = []
    for (i, a), (j, b) in zip(hull, hull[1:]):
        slope = Fraction(b - a) / (j - i)
        roots.append((-slope, j - i))
    return sorted(roots)


def _hypersurface_1d(f: TropPoly) -> WeightedComplex:
    roots = tropical_roots(f)
    return WeightedComplex.from_top_cells(1, [Polyhedron.point((x,)) for x, _ in roots], [m for _, m in roots])


def _hypersurface_2d(f: TropPoly) -> WeightedComplex:
    terms = f.terms
    cells: dict = {}
    for (ei, ai), (ej, aj) in itertools.combinations(terms, 2):
        u = (ei[0] - ej[0], ei[1] - ej[1])
        g = gcd(abs(u[0]), abs(u[1]))
        up = (u[0] // g, u[1] // g)
        d = (-up[1], up[0])
        rhs = aj - ai  # <u, x> = rhs
        p0 = (Fraction(rhs, u[0]), Fraction(0)) if u[0] != 0 else (Fraction(0), Fraction(rhs, u[1]))
        lo, hi = None, None
        empty = False
        for ek, ak in terms:
            if ek == ei or ek == ej:
                continue
            w = (ek[0] - ei[0], ek[1] - ei[1])
            c = w[0] * d[0] + w[1] * d[1]
            r = ai - ak - (w[0] * p0[0] + w[1] * p0[1])
            if c > 0:
                t = r / c
                lo = t if lo is None or t > lo else lo
            elif c < 0:
                t = r / c
                hi = t if hi is None or t < hi else hi
            elif r > 0:
                empty = True
                break
        if empty or (lo is not None and hi is not None and lo >= hi):
            continue
        at = lambda t: (p0[0] + t * d[0], p0[1] + t * d[1])
        if lo is not None and hi is not None:
            P = Polyhedron.segment(at(lo), at(hi))
            mid = (lo + hi) / 2
        elif lo is not None:
            P = Polyhedron.ray(at(lo), d)
            mid = lo + 1
        elif hi is not None:
            P = Polyhedron.ray(at(hi), (-d[0], -d[1]))
            mid = hi - 1
        else:
            P = Polyhedron.line(p0, d)
            mid = Fraction(0)
        key = P.key()
        if key in cells:
            continue
        x = at(mid)
        vals = [(c + e[0] * x[0] + e[1] * x[1], e) for e, c in terms]
        m = min(v for v, _ in vals)
        tied = [e for v, e in vals if v == m]
        proj = [e[0] * up[0] + e[1] * up[1] for e in tied]
        norm2 = up[0] ** 2 + up[1] ** 2
        weight = (max(proj) - min(proj)) // norm2
        cells[key] = (P, weight)
    items = [cells[k] for k in sorted(cells, key=lambda k: (k[1], k[2], k[3], k[4]))]
    return WeightedComplex.from_top_cells(2, [P for P, _ in items], [w for _, w in items])


def hypersurface(f: TropPoly) -> WeightedComplex:
    """Corner locus of f as a weighted polyhedral complex (one or two variables).

    Top cells carry the lattice length of the dual edge in the Newton
    subdivision induced by the coefficients.
    """
    if len(f.terms) == 1:
        return WeightedComplex(f.n_vars)
    if f.n_vars == 1:
        return _hypersurface_1d(f)
    if f.n_vars == 2:
        return _hypersurface_2d(f)
    raise NotImplementedError("hypersurfaces are computed for one or two variables only")


def regular_subdivision(f: TropPoly) -> list[frozenset]:
    """Maximal cells of the regular subdivision of a 2-dimensional Newton polygon.

    Independent of :func:`hypersurface`: lifts each support point to the height
    given by its coefficient and collects the point sets of the lower facets
    of the lifted hull.
    """
    if f.n_vars != 2:
        raise ValueError("two variables expected")
    pts = [(e[0], e[1], c) for e, c in f.terms]
    cells = {}
    for p, q, r in itertools.combinations(pts, 3):
        A = [[Fraction(s[0]), Fraction(s[1]), Fraction(1)] for s in (p, q, r)]
        if la.det(A) == 0:
            continue
        a, b, c = la.solve(A, [s[2] for s in (p, q, r)])
        if all(s[2] >= a * s[0] + b * s[1] + c for s in pts):
            on = frozenset((s[0], s[1]) for s in pts if s[2] == a * s[0] + b * s[1] + c)
            cells[on] = None
    return sorted(cells, key=sorted)


def subdivision_edges(cells) -> tuple[list, list]:
    """(interior, boundary) edges of a planar subdivision given by cell point sets.

    An edge is a pair of lattice points (its extreme points).
    """
    count: dict = {}
    for cell in cells:
        hull = _hull_2d(list(cell))
        for a, b in zip(hull, hull[1:] + hull[:1]):
            on = sorted(p for p in cell if _cross(a, b, p) == 0 and min(a, b) <= p <= max(a, b))
            e = (on[0], on[-1])
            count[e] = count.get(e, 0) + 1
    interior = sorted(e for e, k in count.items() if k == 2)
    boundary = sorted(e for e, k in count.items() if k == 1)
    return interior, boundary


# ---------------------------------------------------------------- valuations

@dataclass(frozen=True)
class PuiseuxPoint:
    """Coordinates given as finite term lists ``[(exponent, coefficient tag), ...]``."""

    coordinates: tuple

    def __post_init__(self):
        coords = []
        for terms in self.coordinates:
            coords.append(tuple((rat(e), str(tag)) for e, tag in terms))
        object.__setattr__(self, "coordinates", tuple(coords))


def tropicalize_point(p: PuiseuxPoint) -> list[Fraction]:
    """Per-coordinate t-adic valuation (least exponent)."""
    out = []
    for i, terms in enumerate(p.coordinates):
        if not terms:
            raise ValueError(f"coordinate {i} has no terms")
        exps = [e for e, _ in terms]
        m = min(exps)
        if exps.count(m) > 1:
            raise ValueError(f"coordinate {i} repeats its minimal exponent {m}")
        out.append(m)
    return out


def newton_polygon_roots(coeff_valuations) -> list[tuple[Fraction, int]]:
    """Slopes of the lower Newton polygon with lattice multiplicities, sorted by slope."""
    pts = [(int(d), rat(v)) for d, v in coeff_valuations]
    if len(pts) < 2:
        raise ValueError("a Newton polygon needs at least two points")
    if len({d for d, _ in pts}) != len(pts):
        raise ValueError("degrees must be distinct")
    hull = _lower_hull(pts)
    out = []
    for (i, a), (j, b) in zip(hull, hull[1:]):
        out.append((Fraction(b - a) / (j - i), j - i))
    return sorted(out)
