from __future__ import annotations

import random
from fractions import Fraction

import pytest

from tropcycle import linalg as la
from tropcycle.generators import random_family
from tropcycle.graphcurve import MetricGraph
from tropcycle.jacobian import abel_jacobi, jac_add, period_matrix
from tropcycle.tvhs import (
    Affine,
    CurveFamily,
    DegenerationError,
    DivisorFamily,
    Mark,
    bb_level,
    circle_family,
    evaluate_grid,
    gauss_manin,
    hodge_bundle,
    infinitesimal_invariant,
    interior_point,
    is_zero_section,
    normal_function,
    principal_family,
    universal_sections,
)

F = Fraction
THETA_BASIS = ((1, -1, 0), (0, 1, -1))


def theta_family(marks=()) -> CurveFamily:
    G = MetricGraph((0, 0), ((0, 1, 1), (0, 1, 1), (0, 1, 1)))
    lengths = (Affine(0, (1, 0)), Affine(1, (0, 0)), Affine(0, (0, 1)))
    cone = (((F(1), F(0)), F(0)), ((F(0), F(1)), F(0)))
    return CurveFamily(G, lengths, cone, tuple(marks), THETA_BASIS)


def D(*terms) -> DivisorFamily:
    return DivisorFamily(tuple(terms))


def test_hodge_bundle_examples():
    fam = circle_family()
    assert hodge_bundle(fam, [F(7, 2)]).matrix() == [[F(7, 2)]]
    s1, s2 = F(3), F(5, 2)
    assert hodge_bundle(theta_family(), [s1, s2]).matrix() == [[s1 + 1, -1], [-1, 1 + s2]]
    G = MetricGraph((0, 0), ((0, 1, 2), (0, 1, 3), (0, 1, 5)))
    const = CurveFamily(G, tuple(Affine(l, (0,)) for _, _, l in G.edges), (), ())
    assert hodge_bundle(const, [F(9)]).matrix() == period_matrix(G).matrix()
    assert gauss_manin(const, 0) == [[0, 0], [0, 0]]


def test_degeneration_is_named():
    with pytest.raises(DegenerationError) as exc:
        hodge_bundle(theta_family(), [F(0), F(1)])
    assert exc.value.edges == [0]


def test_gauss_manin_examples():
    assert gauss_manin(circle_family(), 0) == [[1]]
    assert gauss_manin(theta_family(), 0) == [[1, 0], [0, 0]]
    assert gauss_manin(theta_family(), 1) == [[0, 0], [0, 1]]
    with pytest.raises(ValueError):
        gauss_manin(theta_family(), 2)


@pytest.mark.parametrize("seed", range(15))
def test_gauss_manin_is_the_exact_finite_difference(seed):
    rng = random.Random(seed)
    fam = random_family(rng, rng.randint(1, 4))
    h = F(1, 7)
    s = [F(rng.randint(7, 40), 7) for _ in range(2)]
    for k in range(2):
        up = [x + (h if i == k else 0) for i, x in enumerate(s)]
        dn = [x - (h if i == k else 0) for i, x in enumerate(s)]
        Qu, Qd = hodge_bundle(fam, up).matrix(), hodge_bundle(fam, dn).matrix()
        fd = [[(a - b) / (2 * h) for a, b in zip(r1, r2)] for r1, r2 in zip(Qu, Qd)]
        assert fd == gauss_manin(fam, k)


def test_trivial_and_half_period_sections():
    fam = circle_family([Affine(0, (0,)), Affine(0, (F(1, 2),))])
    zero = normal_function(fam, D((("mark", 0), 1), (("mark", 0), -1)))
    assert zero([F(3)]).is_zero()
    nu = normal_function(fam, D((("mark", 1), 1), (("mark", 0), -1)))
    for s in (F(1), F(5, 3), F(9)):
        assert nu([s]).coords == (s / 2,)


def test_section_values_match_fiberwise_abel_jacobi():
    rng = random.Random(3)
    fam = random_family(rng, 2, n_marks=3)
    Z = D((("mark", 0), 2), (("mark", 1), -1), (("mark", 2), -1))
    nu = normal_function(fam, Z)
    s = [F(3, 2), F(2)]
    assert nu(s) == abel_jacobi(Z.at(fam, s), None, hodge_bundle(fam, s))


@pytest.mark.parametrize("seed", range(10))
def test_sections_are_additive(seed):
    rng = random.Random(50 + seed)
    fam = random_family(rng, rng.randint(1, 3), n_marks=3)
    Z1 = D((("mark", 0), 1), (("mark", 1), -1))
    Z2 = D((("mark", 2), 2), (("vertex", 0), -2))
    s = interior_point(fam, rng)
    P = hodge_bundle(fam, s)
    lhs = normal_function(fam, Z1 + Z2)(s)
    assert lhs == jac_add(normal_function(fam, Z1)(s), normal_function(fam, Z2)(s), P)


def test_universal_sections():
    circ = circle_family([Affine(0, (F(1, 3),))])
    assert is_zero_section(universal_sections(circ, 0))[0]  # genus one: K = 0 and 2g - 2 = 0
    fam = theta_family([Mark(vertex=0)])
    K1 = universal_sections(fam, 0)
    s = [F(2), F(3)]
    from tropcycle.graphcurve import Divisor, V

    assert K1(s) == abel_jacobi(Divisor([(V(0), 1), (V(1), -1)]), None, hodge_bundle(fam, s))
    assert universal_sections(fam, 0, 0)(s).is_zero()
    with pytest.raises(ValueError):
        universal_sections(fam, 3)


def test_infinitesimal_invariants_on_the_circle():
    half = circle_family([Affine(0, (0,)), Affine(0, (F(1, 2),))])
    rep = infinitesimal_invariant(normal_function(half, D((("mark", 1), 1), (("mark", 0), -1))), 1)
    assert rep.values == [[F(1, 2)]] and not rep.vanishes
    fixed = CurveFamily(half.graph, half.lengths, (((F(1),), F(2)),), (Mark(vertex=0), Mark(edge=0, offset=Affine(F(3, 2), (0,)))))
    rep = infinitesimal_invariant(normal_function(fixed, D((("mark", 1), 1), (("mark", 0), -1))), 1)
    assert rep.values == [[0]] and rep.vanishes
    assert infinitesimal_invariant(normal_function(half, D()), 2).vanishes


def test_torsion_section_derivative_by_chain_rule_and_grid():
    # nu = (1/3) period: lift (1/3) s, so delta = (1/3) dQ/ds = 1/3
    fam = circle_family([Affine(0, (0,)), Affine(0, (F(1, 3),))])
    nu = normal_function(fam, D((("mark", 1), 1), (("mark", 0), -1)))
    rep = infinitesimal_invariant(nu, 1)
    assert rep.values == [[F(1, 3) * gauss_manin(fam, 0)[0][0]]]
    rows = evaluate_grid(nu, [[F(k, 4)] for k in range(4, 9)])
    diffs = [(b["coords"][0] - a["coords"][0]) / (b["s"][0] - a["s"][0]) for a, b in zip(rows, rows[1:])]
    assert diffs == [F(1, 3)] * 4


@pytest.mark.parametrize("seed", range(10))
def test_principal_families_have_vanishing_invariants(seed):
    rng = random.Random(70 + seed)
    fam = random_family(rng, rng.randint(1, 3))
    slopes = []
    for _ in fam.graph.edges:
        a = rng.randint(1, 3)
        slopes.append((a, rng.randint(1, 3)))
    F2, Z = principal_family(fam, slopes)
    nu = normal_function(F2, Z)
    assert nu(interior_point(F2, rng)).is_zero()
    assert infinitesimal_invariant(nu, 1).vanishes
    lvl = bb_level(nu)
    assert lvl.level == 3 and lvl.certificate["Psi_1"] == "zero"


@pytest.mark.parametrize("seed", range(10))
def test_lifts_in_different_charts_differ_by_a_lattice_vector(seed):
    rng = random.Random(90 + seed)
    fam = random_family(rng, rng.randint(1, 3), n_marks=2)
    nu = normal_function(fam, D((("mark", 0), 1), (("mark", 1), -1)))
    Q0, Qk = fam.gram_matrix()
    base = nu.lift((0, 0))
    s0 = interior_point(fam, rng)
    Qs = hodge_bundle(fam, s0).matrix()
    for chart in [(0, 1), (fam.graph.n_vertices - 1, 0), (fam.graph.n_vertices - 1, 1)]:
        other = nu.lift(chart)
        diff = [a - b for a, b in zip(other, base)]
        m = la.solve(Qs, [x(s0) for x in diff])
        assert all(x.denominator == 1 for x in m)
        for r, x in enumerate(diff):
            assert x.const == la.dot(Q0[r], m)
            assert list(x.coeffs) == [la.dot(Qk[k][r], m) for k in range(fam.n_params)]


def test_bb_levels():
    half = circle_family([Affine(0, (0,)), Affine(0, (F(1, 2),))])
    nu = normal_function(half, D((("mark", 1), 1), (("mark", 0), -1)))
    assert bb_level(nu).level == 1
    assert bb_level(normal_function(half, D())).level == 3
    assert bb_level(normal_function(half, D()), max_order=1).level == 2
    with pytest.raises(ValueError):
        bb_level(nu, max_order=3)
    # two distinct fixed marks on a theta family
    fam = theta_family([Mark(vertex=0), Mark(edge=1, offset=Affine(F(1, 2), (0, 0)))])
    assert bb_level(universal_sections(fam, 0, 1)).level == 1


@pytest.mark.parametrize("c", [2, 3, -1, -5])
def test_bb_level_unchanged_by_scaling_non_torsion_sections(c):
    fam = theta_family([Mark(vertex=0), Mark(edge=0, offset=Affine(0, (F(1, 3), 0)))])
    Z = D((("mark", 1), 1), (("mark", 0), -1))
    assert bb_level(normal_function(fam, Z * c)).level == bb_level(normal_function(fam, Z)).level == 1


def test_scaling_a_torsion_section_can_kill_it():
    half = circle_family([Affine(0, (0,)), Affine(0, (F(1, 2),))])
    Z = D((("mark", 1), 1), (("mark", 0), -1))
    assert bb_level(normal_function(half, Z)).level == 1
    assert bb_level(normal_function(half, Z * 2)).level == 3


def test_degree_and_kind_validation():
    with pytest.raises(ValueError):
        normal_function(circle_family([Affine(0, (0,))]), D((("mark", 0), 1)))
    with pytest.raises(ValueError):
        DivisorFamily(((("leg", 0), 1),))
