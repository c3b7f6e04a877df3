from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from strategies import multigraphs, unit

from maxbisect.errors import GraphFormatError, MalformedStructure, PreconditionViolated
from maxbisect.graph import (
    WeightedMultigraph,
    bridges_and_2ecc,
    connected_components,
    contract_matching,
    cycle_path_decomposition,
    format_graph,
    format_rational,
    format_weight,
    graph_digest,
    is_connected,
    is_triangle_free,
    parse_graph,
    parse_weight,
    read_graph,
    total_weight,
    write_graph,
)


def naive_bridges(g: WeightedMultigraph) -> frozenset[int]:
    base = len(connected_components(g))
    return frozenset(e.id for e in g.edges if len(connected_components(g.without_edges([e.id]))) > base)


@pytest.mark.parametrize(
    "token, value",
    [("3", Fraction(3)), ("0", Fraction(0)), ("2.5", Fraction(5, 2)), ("7/4", Fraction(7, 4)), ("6/4", Fraction(3, 2))],
)
def test_parse_weight(token, value):
    assert parse_weight(token) == value


@pytest.mark.parametrize("token", ["-1", "abc", "1/0", "", "1e400x"])
def test_parse_weight_rejects(token):
    with pytest.raises(GraphFormatError):
        parse_weight(token)


def test_weight_formatting():
    assert format_weight(Fraction(4)) == "4"
    assert format_weight(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(11)) == "11/1"
    assert format_rational(Fraction(613, 855)) == "613/855"


def test_parse_example_file():
    text = "c a comment\np bisect 3 2\ne 1 2 1/2\ne 2 3 0.25\n"
    g = parse_graph(text)
    assert (g.n, g.m) == (3, 2)
    assert g.edge(0).weight == Fraction(1, 2)
    assert set(g.edge(1).ends) == {1, 2}
    assert total_weight(g) == Fraction(3, 4)


@pytest.mark.parametrize(
    "text",
    [
        "e 1 2 1\n",
        "p bisect 2 1\ne 1 3 1\n",
        "p bisect 2 1\ne 1 1 1\n",
        "p bisect 2 2\ne 1 2 1\n",
        "p bisect 2 1\nx 1 2\n",
        "p cut 2 1\ne 1 2 1\n",
        "",
    ],
)
def test_parse_rejects_malformed(text):
    with pytest.raises(GraphFormatError):
        parse_graph(text)


def test_graph_rejects_bad_edges():
    with pytest.raises(PreconditionViolated):
        WeightedMultigraph.from_edges(2, [(0, 0)])
    with pytest.raises(PreconditionViolated):
        WeightedMultigraph.from_edges(2, [(0, 1, -1)])
    with pytest.raises(PreconditionViolated):
        WeightedMultigraph.from_edges(2, [(0, 2)])


@given(multigraphs())
def test_format_round_trip(g):
    text = format_graph(g, ["comment"])
    h = parse_graph(text)
    assert h == g
    assert format_graph(h) == format_graph(g)
    assert graph_digest(h) == graph_digest(g)


def test_file_round_trip(tmp_path):
    g = WeightedMultigraph.from_edges(4, [(0, 1, Fraction(1, 3)), (1, 2, 2), (1, 2, Fraction(7, 2)), (2, 3, 0)])
    path = tmp_path / "g.gr"
    write_graph(g, path, ["generated"])
    assert read_graph(path) == g
    assert graph_digest(g).startswith("sha256:")


@given(multigraphs())
def test_bridges_match_deletion_oracle(g):
    bridges, comps = bridges_and_2ecc(g)
    assert bridges == naive_bridges(g)
    # 2-edge-connected classes are the components once bridges are removed
    assert sorted(map(sorted, comps)) == sorted(map(sorted, connected_components(g, skip=bridges)))


def test_parallel_edges_are_not_bridges():
    g = unit(3, [(0, 1), (0, 1), (1, 2)])
    assert bridges_and_2ecc(g)[0] == frozenset({2})


@given(multigraphs(simple=True))
def test_triangle_free_matches_brute_force(g):
    brute = not any(
        g.adjacent(a, b) and g.adjacent(b, c) and g.adjacent(a, c)
        for a in range(g.n)
        for b in range(a + 1, g.n)
        for c in range(b + 1, g.n)
    )
    assert is_triangle_free(g) == brute


def test_cycle_path_decomposition():
    # C4 on 0..3, path 4-5-6, isolated 7; edge 0-4 plays the matching
    g = unit(8, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (0, 4)])
    st_ = cycle_path_decomposition(g, [6])
    assert st_.cycles == ((0, 1, 2, 3),)
    assert st_.path in ((4, 5, 6), (6, 5, 4))
    assert st_.isolated == (7,)
    assert st_.oriented_path(g, 6).path == (6, 5, 4)
    with pytest.raises(MalformedStructure):
        st_.oriented_path(g, 5)


def test_decomposition_digon_and_two_paths():
    g = unit(4, [(0, 1), (0, 1), (2, 3)])
    st_ = cycle_path_decomposition(g, [])
    assert st_.cycles == ((0, 1),) and st_.cycle_edges == ((0, 1),)
    with pytest.raises(MalformedStructure):
        cycle_path_decomposition(unit(4, [(0, 1), (2, 3)]), [])
    with pytest.raises(MalformedStructure):
        cycle_path_decomposition(unit(4, [(0, 1), (0, 2), (0, 3)]), [])


@given(st.integers(2, 6), st.data())
def test_contraction_preserves_cross_weight(k, data):
    n = 2 * k
    m = [(2 * i, 2 * i + 1) for i in range(k)]
    extra = data.draw(
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] // 2 != p[1] // 2), max_size=12)
    )
    ws = data.draw(st.lists(st.fractions(0, 5, max_denominator=6), min_size=len(m) + len(extra), max_size=len(m) + len(extra)))
    g = WeightedMultigraph.from_edges(n, [(u, v, w) for (u, v), w in zip(m + extra, ws)])
    c = contract_matching(g, range(k))
    assert total_weight(c.graph) == total_weight(g) - g.weight_of(range(k))
    assert c.graph.is_simple()
    assert c.graph.n == k


def test_contraction_rejects_parallel_matching_copy():
    g = unit(2, [(0, 1), (0, 1)])
    with pytest.raises(PreconditionViolated):
        contract_matching(g, [0])


def test_connectivity_helpers():
    assert is_connected(unit(3, [(0, 1), (1, 2)]))
    assert not is_connected(unit(3, [(0, 1)]))
    assert connected_components(unit(4, [(2, 3)])) == [[0], [1], [2, 3]]
