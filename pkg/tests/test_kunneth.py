from __future__ import annotations

import itertools

import numpy as np
import pytest
import sympy
from scipy import sparse

from tropcycle.kunneth import (
    KunnethSpace,
    correspondence_action,
    cup_pairing,
    degree_projector,
    diagonal_class,
    factor_degrees,
    factor_projectors,
    kunneth_projector,
    li_filtration_membership,
    pushforward,
    xi,
)


def dense(M):
    return np.asarray(M.todense() if sparse.issparse(M) else M, dtype=np.int64)


def test_single_factor_ranks():
    K = KunnethSpace((2,))
    assert int(kunneth_projector(K, (1,)).diagonal().sum()) == 4
    K2 = KunnethSpace((1, 3))
    assert int(kunneth_projector(K2, (2, 0)).diagonal().sum()) == 1


def test_diagonal_acts_as_identity():
    for g in range(4):
        A = correspondence_action(diagonal_class(g), g)
        assert A == np.eye(2 * g + 2, dtype=int).tolist()


def test_cup_pairing_is_unimodular_and_graded():
    for g in range(4):
        P = sympy.Matrix(cup_pairing(g))
        assert abs(P.det()) == 1
        deg = factor_degrees(g)
        n = 2 * g + 2
        # graded commutativity of the cup product
        assert all(P[i, j] == (-1) ** (deg[i] * deg[j]) * P[j, i] for i in range(n) for j in range(n))
    p0, p1, p2 = factor_projectors(2)
    assert (np.array(p0) + np.array(p1) + np.array(p2) == np.eye(6, dtype=int)).all()


@pytest.mark.parametrize("genera", [(0,), (2,), (1, 2), (0, 1, 3), (3, 3), (2, 1, 1)])
def test_projectors_are_the_degree_label_indicators(genera):
    """Oracle: the basis is homogeneous, so pi_alpha is diagonal 0/1 selecting label alpha."""
    K = KunnethSpace(genera)
    labels = K.labels()
    for alpha in itertools.product((0, 1, 2), repeat=K.n):
        expect = np.diag([1 if lab == alpha else 0 for lab in labels])
        assert (dense(kunneth_projector(K, alpha)) == expect).all()


@pytest.mark.parametrize("genera", [(2,), (1, 2), (0, 1, 3)])
def test_projector_algebra(genera):
    K = KunnethSpace(genera)
    alphas = list(itertools.product((0, 1, 2), repeat=K.n))
    pis = {a: dense(kunneth_projector(K, a)) for a in alphas}
    for a in alphas:
        assert (pis[a] @ pis[a] == pis[a]).all()
        for b in alphas:
            if a != b:
                assert not (pis[a] @ pis[b]).any()
    assert (sum(pis.values()) == np.eye(K.dim, dtype=np.int64)).all()
    for k in range(2 * K.n + 1):
        Pk = dense(degree_projector(K, k))
        degs = np.array(K.degrees())
        assert (Pk == np.diag((degs == k).astype(np.int64))).all()


@pytest.mark.parametrize("genera", [(0,), (3,), (1, 2), (2, 2, 1)])
def test_degree_dimensions_match_poincare_polynomial(genera):
    K = KunnethSpace(genera)
    t = sympy.symbols("t")
    poly = sympy.Poly(sympy.prod([1 + 2 * g * t + t**2 for g in genera]), t)
    coeffs = poly.all_coeffs()[::-1]
    assert [K.degree_dimension(k) for k in range(2 * K.n + 1)] == [int(c) for c in coeffs]
    assert K.dim == sum(coeffs)


def test_bad_alpha():
    with pytest.raises(ValueError):
        kunneth_projector(KunnethSpace((1,)), (3,))
    with pytest.raises(ValueError):
        kunneth_projector(KunnethSpace((1, 1)), (1,))


def test_xi():
    assert xi(0, 3) == [] and xi(-1, 2) == []
    assert xi(1, 3) == [()]
    assert xi(3, 3) == [(0, 1), (0, 2), (1, 2)]


def _class(K, entries):
    v = [0] * K.dim
    idx = {b: i for i, b in enumerate(K.basis())}
    for b, c in entries.items():
        v[idx[b]] = c
    return v


def _oracle_membership(K, cls, i):
    """Kernel of the stacked pushforward matrices, computed with sympy."""
    maps = [pushforward(K, S)[1] for S in xi(i, K.n)]
    if not maps:
        return True
    M = sympy.Matrix(np.vstack([dense(m) for m in maps]).tolist())
    ker = M.nullspace()
    v = sympy.Matrix(cls)
    if not ker:
        return all(x == 0 for x in cls)
    B = sympy.Matrix.hstack(*ker)
    return sympy.Matrix.hstack(B, v).rank() == B.rank()


def test_membership_patterns_on_a_surface():
    K = KunnethSpace((1, 1))  # basis per factor: 1, a, b, w
    pure_11 = _class(K, {(1, 2): 1, (2, 1): -3})
    w_1 = _class(K, {(3, 0): 1})
    zero = [0] * K.dim
    for cls, pattern in [(pure_11, (True, True, False)), (w_1, (True, False, False)), (zero, (True, True, True))]:
        got = tuple(li_filtration_membership(K, cls, i) for i in (1, 2, 3))
        assert got == pattern
        assert got == tuple(_oracle_membership(K, cls, i) for i in (1, 2, 3))
        assert li_filtration_membership(K, cls, 0)


def test_membership_random_classes_against_kernel_oracle():
    rng = np.random.default_rng(5)
    K = KunnethSpace((1, 2, 1))
    degs = K.degrees()
    for _ in range(10):
        cls = [int(rng.integers(-2, 3)) if d == K.n and rng.random() < 0.3 else 0 for d in degs]
        for i in range(K.n + 2):
            assert li_filtration_membership(K, cls, i) == _oracle_membership(K, cls, i)


def test_membership_validates_input():
    K = KunnethSpace((1, 1))
    with pytest.raises(ValueError):
        li_filtration_membership(K, [0] * 3, 1)
    with pytest.raises(ValueError):
        li_filtration_membership(K, _class(K, {(0, 0): 1}), 1)
