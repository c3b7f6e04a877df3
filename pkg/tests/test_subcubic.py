from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from strategies import subcubic_graphs, unit

from maxbisect.errors import NotSimple, PreconditionViolated
from maxbisect.generators import PETERSEN_EDGES, bounded_degree_pairs
from maxbisect.graph import WeightedMultigraph, max_degree, total_weight
from maxbisect.oracle import exact_max_bisection, verify_bisection
from maxbisect.subcubic import (
    TWO_THIRDS,
    bisect_via_chromatic_index,
    chromatic_bound,
    forest_bisection,
    is_forest,
    solve_chromatic,
    solve_subcubic,
)


def test_chromatic_bound_values():
    assert chromatic_bound(2) == Fraction(2, 3)
    assert chromatic_bound(3) == Fraction(5, 8)
    assert chromatic_bound(6) == Fraction(4, 7)


@given(st.integers(1, 14), st.integers(1, 6), st.integers(0, 10**6))
def test_chromatic_rounding_meets_its_bound(n, k, seed):
    rng = random.Random(seed)
    pairs = bounded_degree_pairs(n, k, rng)
    g = WeightedMultigraph.from_edges(n, [(u, v, Fraction(rng.randint(0, 30), rng.randint(1, 7))) for u, v in pairs])
    b, guaranteed = bisect_via_chromatic_index(g)
    assert guaranteed == chromatic_bound(max_degree(g)) * total_weight(g)
    assert verify_bisection(g, b, guaranteed)


def test_chromatic_rejects_multigraph():
    with pytest.raises(NotSimple):
        bisect_via_chromatic_index(unit(2, [(0, 1), (0, 1)]))


def cubic_multigraph(n: int, rng: random.Random) -> WeightedMultigraph:
    while True:
        points = [v for v in range(n) for _ in range(3)]
        rng.shuffle(points)
        pairs = list(zip(points[::2], points[1::2]))
        if all(u != v for u, v in pairs):
            return WeightedMultigraph.from_edges(n, pairs)


@given(st.sampled_from([2, 4, 6, 8, 10, 12, 16]), st.integers(0, 10**6))
def test_forest_bisection_certificate(n, seed):
    h = cubic_multigraph(n, random.Random(seed))
    b, cert = forest_bisection(h, seed)
    assert len(b.side_x) == len(b.side_y) == n // 2
    assert is_forest(h, b.side_x) and is_forest(h, b.side_y)
    inner = [sum(1 for eid in h.incident(v) if h.edge(eid).other(v) in b.side_x) for v in b.side_x]
    assert max(inner, default=0) == cert.x_max_degree <= 1
    assert cert.y_edges == len(h.induced_edges(b.side_y))
    assert 2 * cert.y_edges <= len(b.side_y)
    assert cert.cut_size == sum(1 for e in h.edges if (e.u in b.side_x) != (e.v in b.side_x))


def test_forest_bisection_preconditions():
    with pytest.raises(PreconditionViolated):
        forest_bisection(unit(3, [(0, 1), (1, 2)]))
    with pytest.raises(PreconditionViolated):
        forest_bisection(unit(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))


@given(subcubic_graphs(max_n=20), st.integers(0, 1000))
def test_two_thirds_guarantee(g, seed):
    report = solve_subcubic(g, seed)
    bound = TWO_THIRDS * total_weight(g)
    assert report.guaranteed_bound == bound
    assert verify_bisection(g, report.bisection, bound)
    assert tuple(sorted(report.bisection.side_x)) == report.side_x


@given(subcubic_graphs(max_n=12))
def test_two_thirds_never_beats_the_optimum(g):
    assert solve_subcubic(g).achieved <= exact_max_bisection(g)[0]


@pytest.mark.parametrize(
    "n, pairs",
    [
        (4, [(0, 1), (0, 2), (0, 3)]),  # claw: exactly two thirds
        (1, []),
        (2, [(0, 1)]),
        (3, [(0, 1), (1, 2), (0, 2)]),
        (10, PETERSEN_EDGES),
        (7, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)]),
    ],
)
def test_two_thirds_small_cases(n, pairs):
    g = unit(n, pairs)
    report = solve_subcubic(g)
    assert report.achieved * 3 >= 2 * g.m
    assert verify_bisection(g, report.bisection, report.guaranteed_bound)


def test_subcubic_preconditions():
    with pytest.raises(PreconditionViolated):
        solve_subcubic(unit(5, [(0, 1), (0, 2), (0, 3), (0, 4)]))
    with pytest.raises(NotSimple):
        solve_subcubic(unit(2, [(0, 1), (0, 1)]))


def test_subcubic_is_deterministic_per_seed():
    g = unit(10, PETERSEN_EDGES)
    a, b = solve_subcubic(g, 3), solve_subcubic(g, 3)
    assert a.side_x == b.side_x and a.achieved == b.achieved


def test_chromatic_report():
    g = unit(10, PETERSEN_EDGES)
    report = solve_chromatic(g)
    assert report.method == "chi" and report.meets_bound
