"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line that is also echoed in the terminal summary.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import Counter
from fractions import Fraction

import numpy as np
import sympy
from scipy import sparse

from tropcycle import io
from tropcycle import linalg as la
from tropcycle.cli import run
from tropcycle.generators import random_family, random_graph, random_pl_function, random_trop_poly
from tropcycle.graphcurve import MetricGraph, divisor_of, genus, tropical_hodge_numbers
from tropcycle.jacobian import abel_jacobi, gram, period_matrix
from tropcycle.kunneth import KunnethSpace, degree_projector, kunneth_projector
from tropcycle.polycx import check_balanced
from tropcycle.stablegraphs import enumerate_stable_graphs
from tropcycle.tautfz import series_A, series_B, series_C
from tropcycle.troppoly import TropPoly, hypersurface, newton_polygon_roots, tropical_roots
from tropcycle.tvhs import (
    Affine,
    CurveFamily,
    DivisorFamily,
    Mark,
    bb_level,
    circle_family,
    gauss_manin,
    hodge_bundle,
    infinitesimal_invariant,
    normal_function,
    principal_family,
    universal_sections,
)

from .conftest import ACCEPTANCE
from .test_cli import inputs
from .test_io import objects, roundtrip
from .test_tautfz import a_oracle, c_oracle

F = Fraction


def record(n: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"[{n:2d}] {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")
    ACCEPTANCE.append(line)
    print(line)
    assert ok, line


def test_01_balancing_closure():
    rng = random.Random(1)
    start = time.perf_counter()
    bad = 0
    for _ in range(500):
        f = random_trop_poly(rng, degree=rng.randint(1, 6))
        rep = check_balanced(hypersurface(f))
        bad += not rep.balanced
    elapsed = time.perf_counter() - start
    record(1, "balancing of 500 random plane hypersurfaces", bad == 0 and elapsed < 60,
           f"{bad} unbalanced, {elapsed:.1f}s")


def _pl_corpus():
    rng = random.Random(2)
    for _ in range(200):
        G = random_graph(rng, rng.randint(1, 5))
        yield G, random_pl_function(rng, G)


def test_02_abel_theorem():
    failures = 0
    for G, f in _pl_corpus():
        failures += not abel_jacobi(divisor_of(f, G), None, period_matrix(G)).is_zero()
    record(2, "AJ(div f) = 0 on 200 random PL functions, genus <= 5", failures == 0, f"{failures} failures")


def test_03_degree_zero():
    failures = sum(divisor_of(f, G).degree != 0 for G, f in _pl_corpus())
    record(3, "deg div f = 0 on the same corpus", failures == 0, f"{failures} failures")


def test_04_theta_ground_truth():
    a, b, c = sympy.symbols("a b c", positive=True)
    symbolic = sympy.Matrix(gram([[1, -1, 0], [0, 1, -1]], [a, b, c])) == sympy.Matrix([[a + b, -b], [-b, b + c]])
    rng = random.Random(4)
    pd = 0
    for _ in range(100):
        x, y, z = (F(rng.randint(1, 50), rng.randint(1, 9)) for _ in range(3))
        G = MetricGraph((0, 0), ((0, 1, x), (0, 1, y), (0, 1, z)))
        Q = period_matrix(G, basis=[[1, -1, 0], [0, 1, -1]]).matrix()
        pd += Q == [[x + y, -y], [-y, y + z]] and la.is_positive_definite(Q)
    record(4, "theta period matrix symbolic and 100 positive-definite triples", symbolic and pd == 100,
           f"{pd}/100 numeric")


def test_05_gauss_manin_exactness():
    rng = random.Random(5)
    h = F(1, 7)
    ok = 0
    for _ in range(50):
        fam = random_family(rng, rng.randint(1, 4))
        s = [F(rng.randint(7, 40), 7) for _ in range(2)]
        good = True
        for k in range(2):
            up = [x + (h if i == k else 0) for i, x in enumerate(s)]
            dn = [x - (h if i == k else 0) for i, x in enumerate(s)]
            Qu, Qd = hodge_bundle(fam, up).matrix(), hodge_bundle(fam, dn).matrix()
            fd = [[(p - q) / (2 * h) for p, q in zip(r1, r2)] for r1, r2 in zip(Qu, Qd)]
            good &= fd == gauss_manin(fam, k)
        ok += good
    record(5, "Gauss-Manin equals the h = 1/7 symmetric difference on 50 families", ok == 50, f"{ok}/50")


def test_06_normal_function_invariants():
    half = circle_family([Affine(0, (0,)), Affine(0, (F(1, 2),))])
    Z = DivisorFamily(((("mark", 1), 1), (("mark", 0), -1)))
    delta_ok = infinitesimal_invariant(normal_function(half, Z), 1).values == [[F(1, 2)]]
    rng = random.Random(6)
    psi_ok = True
    for _ in range(10):
        fam = random_family(rng, rng.randint(1, 3))
        slopes = [(rng.randint(1, 3), rng.randint(1, 3)) for _ in fam.graph.edges]
        F2, Zf = principal_family(fam, slopes)
        psi_ok &= bb_level(normal_function(F2, Zf)).certificate["Psi_1"] == "zero"
    G = MetricGraph((0, 0), ((0, 1, 1), (0, 1, 1), (0, 1, 1)))
    theta = CurveFamily(G, (Affine(0, (1, 0)), Affine(1, (0, 0)), Affine(0, (0, 1))),
                        (((F(1), F(0)), F(0)), ((F(0), F(1)), F(0))),
                        (Mark(vertex=0), Mark(edge=1, offset=Affine(F(1, 2), (0, 0)))),
                        ((1, -1, 0), (0, 1, -1)))
    level_ok = bb_level(universal_sections(theta, 0, 1)).level == 1
    record(6, "half-period delta = 1/2, Psi_1 = 0 on div(f) families, D_12 level 1",
           delta_ok and psi_ok and level_ok, f"delta={delta_ok} psi={psi_ok} level={level_ok}")


def test_07_kunneth_algebra():
    checked = 0
    ok = True
    for n in (1, 2, 3):
        for genera in itertools.product(range(4), repeat=n):
            K = KunnethSpace(genera)
            alphas = list(itertools.product((0, 1, 2), repeat=n))
            pis = {a: kunneth_projector(K, a) for a in alphas}
            ok &= all((p @ p - p).count_nonzero() == 0 for p in pis.values())
            ok &= all((pis[a] @ pis[b]).count_nonzero() == 0 for a in alphas for b in alphas if a != b)
            for k in range(2 * n + 1):
                part = sum((pis[a] for a in alphas if sum(a) == k), sparse.csr_matrix((K.dim, K.dim), dtype=np.int64))
                ok &= (part - degree_projector(K, k)).count_nonzero() == 0
            checked += 1
    record(7, "Kunneth projectors idempotent, orthogonal, graded complete", bool(ok), f"{checked} products")


def test_08_hodge_numbers():
    rng = random.Random(8)
    ok = 0
    for _ in range(100):
        G = random_graph(rng, rng.randint(0, 5))
        h = tropical_hodge_numbers(G)
        ok += h[1, 0] == genus(G) and all(h[p, q] == h[q, p] for p in range(2) for q in range(2))
    record(8, "h^{1,0} = genus and Hodge symmetry on 100 graphs", ok == 100, f"{ok}/100")


def test_09_fz_series():
    A, B = series_A(12), series_B(12)
    coeffs = A.coeffs[:3] == (1, 60, 27720) and B.coeffs[:2] == (-1, 84)
    oracle = all(A[j] == a_oracle(j) for j in range(13))
    trips = A.log().exp() == A and (B / A) * A == B
    cn = all(list(series_C(n, 8).coeffs) == c_oracle(n, 8) for n in range(5))
    record(9, "FZ coefficients, formal round trips to order 12, C_n to order 8",
           coeffs and oracle and trips and cn, f"coeffs={coeffs} trips={trips} C_n={cn}")


def _vp(x: Fraction, p: int) -> int:
    k, n, d = 0, x.numerator, x.denominator
    while n % p == 0:
        n //= p
        k += 1
    while d % p == 0:
        d //= p
        k -= 1
    return k


def test_10_fundamental_theorem():
    rng = random.Random(10)
    ok = 0
    for _ in range(100):
        p = rng.choice([2, 3, 5, 7])
        ks = [rng.randint(-3, 3) for _ in range(rng.randint(1, 6))]
        roots = [F(rng.choice([1, -1]) * rng.choice([u for u in range(1, 12) if u % p])) * F(p) ** k for k in ks]
        coeffs = [F(1)]
        for r in roots:
            nxt = [F(0)] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i + 1] += c
                nxt[i] -= r * c
            coeffs = nxt
        vals = [(i, _vp(c, p)) for i, c in enumerate(coeffs) if c != 0]
        slopes = newton_polygon_roots(vals)
        got = Counter()
        for s, m in slopes:
            got[-s] += m
        trop = tropical_roots(TropPoly(1, tuple(((i,), v) for i, v in vals)))
        ok += got == Counter(ks) and [(-s, m) for s, m in reversed(slopes)] == trop
    record(10, "Newton slopes equal tropical roots on 100 p-adic polynomials", ok == 100, f"{ok}/100")


def test_11_genus_two_maximal_types():
    types = enumerate_stable_graphs(2, 0)
    maximal = [T for T in types if T.is_maximal()]
    shapes = sorted(tuple(sorted(Counter((min(u, v), max(u, v)) for u, v in T.edges).values())) for T in maximal)
    ok = len(types) == 7 and len(maximal) == 2 and shapes == [(1, 1, 1), (3,)]
    record(11, "genus-2 maximal stable graphs are the dumbbell and the theta graph", ok,
           f"{len(types)} types, {len(maximal)} maximal")


def test_12_roundtrip_determinism(tmp_path):
    docs = 0
    ok = True
    for seed in range(5):
        for x in objects(seed):
            text = io.dumps(io.to_json(x))
            ok &= io.dumps(io.to_json(roundtrip(x))) == text
            docs += 1
    argv = inputs(tmp_path)
    for command, extra in argv.items():
        outs = []
        for tag in "ab":
            out = tmp_path / f"{command}.{tag}"
            ok &= run([command, *extra, "--output", str(out)]) == 0
            outs.append(out.read_bytes())
        ok &= outs[0] == outs[1]
    record(12, "JSON round trips byte-identical and CLI reruns reproducible", bool(ok),
           f"{docs} documents, {len(argv)} commands")
