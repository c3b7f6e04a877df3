from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, strategies as st
from strategies import multigraphs, unit

from maxbisect.errors import ImproperColoring, NotSimple, PreconditionViolated
from maxbisect.generators import PETERSEN_EDGES, bipartite_apex_pairs
from maxbisect.graph import WeightedMultigraph, bridges_and_2ecc, is_connected, is_matching, max_degree
from maxbisect.matching import (
    EdgeColoring,
    check_coloring,
    forced_perfect_matching,
    heaviest_color_class,
    matching_from_pairs,
    max_cardinality_matching_size,
    max_weight_matching,
    perfect_matching,
    vizing_color,
)


def brute_matchings(g: WeightedMultigraph):
    ids = [e.id for e in g.edges]
    for k in range(len(ids) + 1):
        for combo in combinations(ids, k):
            if is_matching(g, combo):
                yield frozenset(combo)


@given(multigraphs(max_n=7, max_m=10))
def test_max_weight_matching_is_optimal(g):
    m = max_weight_matching(g)
    assert is_matching(g, m)
    assert g.weight_of(m) == max(g.weight_of(c) for c in brute_matchings(g))


@given(multigraphs(max_n=7, max_m=10))
def test_perfect_matching_existence(g):
    pm = perfect_matching(g)
    exists = any(2 * len(c) == g.n for c in brute_matchings(g))
    assert (pm is not None) == exists
    if pm is not None:
        assert is_matching(g, pm) and 2 * len(pm) == g.n


@given(multigraphs(max_n=7, max_m=10))
def test_max_cardinality_size(g):
    assert max_cardinality_matching_size(g) == max(len(c) for c in brute_matchings(g))


def cubic_multigraph(n: int, rng: random.Random) -> WeightedMultigraph:
    """Loopless, connected, bridgeless cubic multigraph from the pairing model."""
    while True:
        points = [v for v in range(n) for _ in range(3)]
        rng.shuffle(points)
        pairs = list(zip(points[::2], points[1::2]))
        if any(u == v for u, v in pairs):
            continue
        g = WeightedMultigraph.from_edges(n, pairs)
        if is_connected(g) and not bridges_and_2ecc(g)[0]:
            return g


@given(st.sampled_from([2, 4, 6, 8, 10]), st.integers(0, 10**6))
def test_forced_matching_contains_every_edge(n, seed):
    g = cubic_multigraph(n, random.Random(seed))
    for e in g.edges:
        pm = forced_perfect_matching(g, e.id)
        assert e.id in pm and is_matching(g, pm) and 2 * len(pm) == g.n


def test_forced_matching_on_petersen():
    g = unit(10, PETERSEN_EDGES)
    for e in g.edges:
        assert e.id in forced_perfect_matching(g, e.id)


def test_forced_matching_requires_cubic():
    with pytest.raises(PreconditionViolated):
        forced_perfect_matching(unit(3, [(0, 1), (1, 2)]), 0)


@given(multigraphs(max_n=10, max_m=25, simple=True))
def test_vizing_uses_at_most_delta_plus_one(g):
    c = vizing_color(g)
    check_coloring(g, c)
    assert set(c.colors) == {e.id for e in g.edges}
    assert c.count <= max_degree(g) + 1
    for cls in c.classes().values():
        assert is_matching(g, cls)


def test_vizing_rejects_multigraph():
    with pytest.raises(NotSimple):
        vizing_color(unit(2, [(0, 1), (0, 1)]))


def test_check_coloring_rejects_clash():
    g = unit(3, [(0, 1), (1, 2)])
    with pytest.raises(ImproperColoring):
        check_coloring(g, EdgeColoring({0: 0, 1: 0}, 1))


def test_bipartite_apex_colouring_and_matching():
    n, pairs = bipartite_apex_pairs(1)
    g = unit(n, pairs)
    c = vizing_color(g)
    assert c.count == 4
    assert len(max_weight_matching(g)) == 2


def test_heaviest_class_and_pairs():
    g = WeightedMultigraph.from_edges(4, [(0, 1, 5), (1, 2, 1), (2, 3, 5)])
    c = vizing_color(g)
    heavy = heaviest_color_class(g, c)
    assert g.weight_of(heavy) == max(g.weight_of(cls) for cls in c.classes().values())
    assert g.weight_of(heavy) * c.count >= 11
    assert matching_from_pairs(g, [(0, 1), (3, 2)]) == frozenset({0, 2})
