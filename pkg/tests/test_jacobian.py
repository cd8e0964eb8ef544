from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from tropcycle import linalg as la
from tropcycle.generators import random_divisor, random_graph, random_pl_function
from tropcycle.graphcurve import Divisor, GraphPoint, MetricGraph, V, linearly_equivalent
from tropcycle.jacobian import (
    abel_jacobi,
    aj_of_principal,
    boundary,
    cycle_basis,
    gram,
    jac_add,
    jac_neg,
    lattice_coordinates,
    monodromy_map,
    period_matrix,
    reduce_mod_lattice,
)

F = Fraction
THETA_BASIS = [[1, -1, 0], [0, 1, -1]]


def theta(a, b, c) -> MetricGraph:
    return MetricGraph((0, 0), ((0, 1, a), (0, 1, b), (0, 1, c)))


def test_theta_period_matrix_symbolic():
    a, b, c = sympy.symbols("a b c", positive=True)
    Q = gram(THETA_BASIS, [a, b, c])
    assert sympy.Matrix(Q) == sympy.Matrix([[a + b, -b], [-b, b + c]])


@pytest.mark.parametrize("seed", range(10))
def test_theta_period_matrix_numeric(seed):
    rng = random.Random(seed)
    a, b, c = (F(rng.randint(1, 20), rng.randint(1, 5)) for _ in range(3))
    P = period_matrix(theta(a, b, c), basis=THETA_BASIS)
    assert P.matrix() == [[a + b, -b], [-b, b + c]]
    assert la.is_positive_definite(P.matrix())


def test_bad_basis_rejected():
    G = theta(1, 2, 3)
    with pytest.raises(ValueError):
        period_matrix(G, basis=[[1, 0, 0], [0, 1, -1]])
    with pytest.raises(ValueError):
        period_matrix(G, basis=[[1, -1, 0], [2, -2, 0]])


@pytest.mark.parametrize("seed", range(20))
def test_cycle_basis_and_base_change(seed):
    rng = random.Random(seed)
    G = random_graph(rng, rng.randint(1, 4))
    B = cycle_basis(G)
    assert all(not any(boundary(G, b)) for b in B)
    P = period_matrix(G)
    assert la.is_positive_definite(P.matrix())
    # unimodular change of basis gives U Q U^T
    g = len(B)
    U = [[1 if i == j else 0 for j in range(g)] for i in range(g)]
    if g > 1:
        U[0][1] = rng.randint(-3, 3)
    B2 = [[sum(U[i][k] * B[k][e] for k in range(g)) for e in range(G.n_edges)] for i in range(g)]
    Q2 = period_matrix(G, basis=B2).matrix()
    Ut = [list(r) for r in zip(*U)]
    assert Q2 == la.matmul(la.matmul(U, P.matrix()), Ut)


def test_circle_abel_jacobi():
    L, d = F(5), F(2)
    G = MetricGraph((0,), ((0, 0, L),))
    P = period_matrix(G)
    q = GraphPoint(edge=0, offset=d)
    assert abel_jacobi(Divisor([(q, 1), (V(0), -1)]), None, P).coords == (d,)
    assert abel_jacobi(Divisor([(q, -1), (V(0), 1)]), None, P).coords == (L - d,)


@given(st.lists(st.tuples(st.integers(1, 39), st.integers(-3, 3)), min_size=1, max_size=5))
def test_circle_matches_winding_oracle(terms):
    """On a loop of length L, AJ(sum m_i t_i) = sum m_i t_i mod L."""
    L = F(8)
    G = MetricGraph((0,), ((0, 0, L),))
    pts = [(G.point(0, F(t, 5)), m) for t, m in terms]
    D = Divisor(pts)
    D = D + Divisor([(V(0), -D.degree)])
    expect = sum((m * F(t, 5) for t, m in terms), F(0)) % L
    assert abel_jacobi(D, None, period_matrix(G)).coords == (expect,)


@pytest.mark.parametrize("seed", range(30))
def test_abel_theorem_and_homomorphism(seed):
    rng = random.Random(400 + seed)
    G = random_graph(rng, rng.randint(1, 5))
    P = period_matrix(G)
    f = random_pl_function(rng, G)
    assert aj_of_principal(f, G, P).is_zero()
    D1, D2 = random_divisor(rng, G), random_divisor(rng, G)
    a1, a2 = abel_jacobi(D1, None, P), abel_jacobi(D2, None, P)
    assert abel_jacobi(D1 + D2, None, P) == jac_add(a1, a2, P)
    assert abel_jacobi(-D1, None, P) == jac_neg(a1, P)
    # the base point is irrelevant in degree 0
    assert abel_jacobi(D1, V(G.n_vertices - 1), P) == a1
    # injectivity: AJ(D) = 0 exactly when D is principal
    assert a1.is_zero() == linearly_equivalent(D1, Divisor(), G).equivalent


@pytest.mark.parametrize("seed", range(10))
def test_reduction_is_canonical(seed):
    rng = random.Random(seed)
    G = random_graph(rng, rng.randint(1, 3))
    P = period_matrix(G)
    v = [F(rng.randint(-50, 50), rng.randint(1, 7)) for _ in range(P.genus)]
    p = reduce_mod_lattice(v, P)
    z = lattice_coordinates(p, P)
    assert all(0 <= x < 1 for x in z)
    shift = la.matvec(P.matrix(), [rng.randint(-3, 3) for _ in range(P.genus)])
    assert reduce_mod_lattice([a + b for a, b in zip(v, shift)], P) == p
    assert reduce_mod_lattice(p.coords, P) == p


def test_monodromy_requires_genus():
    P = period_matrix(MetricGraph((0, 0), ((0, 1, 1),), allow_leaves=True))
    assert P.genus == 0
    with pytest.raises(ValueError):
        monodromy_map(P)
    assert monodromy_map(period_matrix(theta(1, 2, 3))) == period_matrix(theta(1, 2, 3)).matrix()


def test_degree_must_be_zero():
    G = theta(1, 1, 1)
    with pytest.raises(ValueError):
        abel_jacobi(Divisor([(V(0), 1)]), None, period_matrix(G))
