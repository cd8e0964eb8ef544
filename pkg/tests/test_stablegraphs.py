from __future__ import annotations

import itertools

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import categorical_node_match

from tropcycle.stablegraphs import StableGraphType, canonical_form, enumerate_stable_graphs


def to_nx(T: StableGraphType) -> nx.MultiGraph:
    M = nx.MultiGraph()
    for v, w in enumerate(T.weights):
        M.add_node(v, w=w, legs=tuple(i for i, x in enumerate(T.legs) if x == v))
    for a, b in T.edges:
        M.add_edge(a, b)
    return M


MATCH = categorical_node_match(["w", "legs"], [None, None])


def isomorphic(S, T) -> bool:
    return nx.is_isomorphic(to_nx(S), to_nx(T), node_match=MATCH)


def brute_force(g: int, n: int) -> list[StableGraphType]:
    """All connected stable types, by exhaustive edge multisets and networkx isomorphism rejection."""
    found: list = []
    for nv in range(1, 2 * g - 2 + n + 1):
        pairs = [(a, b) for a in range(nv) for b in range(a, nv)]
        for weights in itertools.product(range(g + 1), repeat=nv):
            ne = g - sum(weights) + nv - 1
            if ne < 0:
                continue
            for edges in itertools.combinations_with_replacement(pairs, ne):
                for legs in itertools.product(range(nv), repeat=n):
                    T = StableGraphType(weights, tuple(edges), legs)
                    if not (T.is_connected() and T.is_stable() and T.genus == g):
                        continue
                    if not any(isomorphic(T, S) for S in found):
                        found.append(T)
    return found


@pytest.mark.parametrize("g,n", [(0, 3), (1, 1), (1, 2), (2, 0), (0, 4), (0, 5)])
def test_counts_match_brute_force(g, n):
    assert len(enumerate_stable_graphs(g, n)) == len(brute_force(g, n))


@pytest.mark.parametrize("g,n,count", [(0, 3, 1), (1, 1, 2), (1, 2, 5), (2, 0, 7), (0, 4, 4), (0, 5, 26), (3, 0, 42)])
def test_known_counts(g, n, count):
    assert len(enumerate_stable_graphs(g, n)) == count


@pytest.mark.parametrize("g,n", [(1, 3), (2, 1), (3, 0)])
def test_no_duplicates_and_all_stable(g, n):
    types = enumerate_stable_graphs(g, n)
    for T in types:
        assert T.is_stable() and T.is_connected() and T.genus == g and len(T.legs) == n
    for S, T in itertools.combinations(types, 2):
        assert not isomorphic(S, T)


def test_genus_two_maximal_types_are_theta_and_dumbbell():
    maximal = [T for T in enumerate_stable_graphs(2, 0) if T.is_maximal()]
    theta = StableGraphType((0, 0), ((0, 1), (0, 1), (0, 1)), ())
    dumbbell = StableGraphType((0, 0), ((0, 0), (0, 1), (1, 1)), ())
    assert len(maximal) == 2
    assert any(isomorphic(T, theta) for T in maximal)
    assert any(isomorphic(T, dumbbell) for T in maximal)


def test_examples():
    (T,) = enumerate_stable_graphs(0, 3)
    assert T.weights == (0,) and T.legs == (0, 0, 0) and not T.edges
    kinds = enumerate_stable_graphs(1, 1)
    assert {(T.weights, len(T.edges)) for T in kinds} == {((1,), 0), ((0,), 1)}


def test_canonical_form_is_relabelling_invariant():
    T = StableGraphType((0, 1, 0), ((0, 1), (1, 2), (0, 2), (2, 2)), (0, 2))
    for perm in itertools.permutations(range(3)):
        S = StableGraphType(
            tuple(T.weights[perm.index(i)] for i in range(3)),
            tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in T.edges)),
            tuple(perm[x] for x in T.legs),
        )
        assert canonical_form(S) == canonical_form(T)


def test_out_of_range():
    for g, n in [(0, 2), (1, 0), (-1, 4), (3, 3)]:
        with pytest.raises(ValueError):
            enumerate_stable_graphs(g, n)


def test_dict_roundtrip():
    for T in enumerate_stable_graphs(1, 2):
        assert StableGraphType.from_dict(T.to_dict()) == T
