from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from strategies import multigraphs, unit

from maxbisect.errors import InvalidFamily, TooManyEdges
from maxbisect.families import (
    BalancedBlock,
    BalancedFamily,
    Bisection,
    complete_family,
    family_weight,
    forest_to_family,
    matching_family,
    round_to_bisection,
    rounding_bound,
    validate_family,
)
from maxbisect.graph import total_weight
from maxbisect.matching import max_weight_matching


def block(a, b):
    return BalancedBlock.of(a, b)


def test_validate_family_reports_each_problem():
    g = unit(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)])
    assert validate_family(g, BalancedFamily.of([block([0, 2], [1, 3])]))
    assert not validate_family(g, BalancedFamily.of([block([0], [1, 2])]))  # unequal sides
    assert not validate_family(g, BalancedFamily.of([block([0, 1], [2, 3])]))  # 0-1 inside a side
    assert not validate_family(g, BalancedFamily.of([block([0], [1]), block([1], [2])]))  # overlap
    assert not validate_family(g, BalancedFamily.of([block([0], [9])]))  # outside the graph
    with pytest.raises(InvalidFamily):
        family_weight(g, BalancedFamily.of([block([0, 1], [2, 3])]))


def test_family_weight_counts_crossing_edges_only():
    g = unit(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    fam = BalancedFamily.of([block([0, 2], [1, 3])])
    assert family_weight(g, fam) == 4
    assert rounding_bound(g, fam) == 4


def test_complete_family_pairs_in_ascending_order():
    g = unit(5, [])
    full, leftover = complete_family(g, BalancedFamily.of([block([1], [3])]))
    assert [sorted(b.vertices) for b in full.blocks[1:]] == [[0, 2]]
    assert leftover == 4


def test_derandomized_rounding_is_deterministic_and_balanced():
    g = unit(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    fam = matching_family(g, [0, 2])
    b1 = round_to_bisection(g, fam)
    b2 = round_to_bisection(g, fam)
    assert b1 == b2
    assert abs(len(b1.side_x) - len(b1.side_y)) <= 1
    assert 4 in b1.side_x  # odd leftover lands in X


@given(multigraphs(max_n=9, max_m=16), st.integers(0, 1000))
def test_rounding_meets_half_plus_family(g, seed):
    fam = matching_family(g, max_weight_matching(g))
    bound = rounding_bound(g, fam)
    b = round_to_bisection(g, fam)
    assert b.cut_weight >= bound
    assert b.cut_weight == g.cut_weight(b.side_x)
    assert b.side_x | b.side_y == frozenset(range(g.n)) and not (b.side_x & b.side_y)
    assert abs(len(b.side_x) - len(b.side_y)) <= 1
    # every family edge is cut in both rounding modes
    r = round_to_bisection(g, fam, mode="seeded-random", seed=seed)
    assert abs(len(r.side_x) - len(r.side_y)) <= 1
    for blk in fam.blocks:
        for side in (b, r):
            a_in_x = next(iter(blk.side_a)) in side.side_x
            assert all((v in side.side_x) == a_in_x for v in blk.side_a)
            assert all((v in side.side_x) != a_in_x for v in blk.side_b)


def test_rounding_rejects_unknown_mode():
    g = unit(2, [(0, 1)])
    with pytest.raises(ValueError):
        round_to_bisection(g, BalancedFamily(), mode="coin")


@given(st.integers(2, 12), st.data())
def test_forest_to_family_covers_every_forest_edge(n, data):
    # a random forest on half the vertices, the rest isolated
    k = n // 2
    parents = [data.draw(st.one_of(st.none(), st.integers(0, i - 1))) if i else None for i in range(k)]
    pairs = [(p, i) for i, p in enumerate(parents) if p is not None]
    g = unit(n, pairs)
    fam = forest_to_family(g, range(n))
    assert validate_family(g, fam)
    assert family_weight(g, fam) == total_weight(g)


def test_forest_to_family_rejects_dense_or_cyclic_sets():
    with pytest.raises(TooManyEdges):
        forest_to_family(unit(3, [(0, 1), (1, 2)]), range(3))
    with pytest.raises(InvalidFamily):
        forest_to_family(unit(8, [(0, 1), (1, 2), (2, 3), (3, 0)]), range(8))


def test_bisection_helpers():
    g = unit(4, [(0, 1), (2, 3)])
    b = Bisection.from_side(g, [0, 2])
    assert b.cut_weight == 2
    s = b.swapped()
    assert s.side_x == b.side_y and s.cut_weight == Fraction(2)
