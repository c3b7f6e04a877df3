from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from maxbisect.audit import chord_matchings, cycle_hosts, path_hosts, run_audit
from maxbisect.errors import UnhandledChordPattern
from maxbisect.families import BalancedFamily
from maxbisect.gadgets import (
    GadgetDistribution,
    GadgetOutcome,
    balanced_block,
    chords,
    gadget_for_cycle,
    gadget_for_path,
    path_table,
)
from maxbisect.graph import WeightedMultigraph, is_triangle_free
from maxbisect.oracle import audit_gadget


def cycle(n: int, extra=()) -> WeightedMultigraph:
    return WeightedMultigraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)] + list(extra))


def whole_cycle_probability(dist: GadgetDistribution) -> Fraction:
    full = frozenset(dist.vertices)
    return sum((o.probability for o in dist.outcomes if o.family.covered == full), Fraction(0))


def test_c8_edges_exactly_21_over_32():
    h = cycle(8)
    report = audit_gadget(h, gadget_for_cycle(h, range(8)))
    assert report.ok
    assert set(report.edge_inclusion.values()) == {Fraction(21, 32)}
    assert set(report.vertex_exclusion.values()) == {Fraction(1, 8)}


def test_c6_whole_cycle_seven_eighths():
    h = cycle(6)
    dist = gadget_for_cycle(h, range(6))
    assert whole_cycle_probability(dist) == Fraction(7, 8)
    assert audit_gadget(h, dist).ok


def test_c5_exclusion_one_fifth():
    h = cycle(5)
    report = audit_gadget(h, gadget_for_cycle(h, range(5)))
    assert report.ok and report.claim == "cycle-5"
    assert set(report.vertex_exclusion.values()) == {Fraction(1, 5)}
    assert set(report.edge_inclusion.values()) == {Fraction(3, 5)}


def test_chordless_c7_values():
    h = cycle(7)
    report = audit_gadget(h, gadget_for_cycle(h, range(7)))
    assert report.ok
    assert set(report.edge_inclusion.values()) == {Fraction(5, 7)}
    assert set(report.vertex_exclusion.values()) == {Fraction(1, 7)}


def test_digon_gadget():
    h = WeightedMultigraph.from_edges(2, [(0, 1), (0, 1)])
    dist = gadget_for_cycle(h, (0, 1))
    report = audit_gadget(h, dist)
    assert report.ok and len(report.edge_inclusion) == 2
    assert whole_cycle_probability(dist) == Fraction(7, 8)


@pytest.mark.parametrize("length", list(range(4, 33)))
def test_every_chordless_cycle(length):
    h = cycle(length)
    report = audit_gadget(h, gadget_for_cycle(h, range(length)))
    assert report.ok, report.violations
    assert min(report.edge_inclusion.values()) >= (Fraction(3, 5) if length == 5 else Fraction(5, 8))


def test_chord_pattern_counts():
    # non-empty matchings of distance >= 3 chords
    assert len(chord_matchings(7)) == 28
    assert len(chord_matchings(11)) == 5478


@given(st.integers(0, 27), st.permutations(range(7)))
def test_chorded_c7_under_relabeling(index, perm):
    pattern = chord_matchings(7)[index]
    h = cycle(7, pattern)
    # the same host walked from a different start and direction
    start, step = perm[0], 1 if perm[1] % 2 else -1
    order = [(start + step * i) % 7 for i in range(7)]
    report = audit_gadget(h, gadget_for_cycle(h, order))
    assert report.ok, report.violations


def test_all_chorded_c7_patterns():
    cases = [c for c in run_audit("cycles", 7) if c.label.startswith("C7")]
    assert len(cases) == 29
    assert all(c.report.ok for c in cases)


@given(st.integers(0, 5477))
def test_chorded_c11_sample(index):
    h = cycle(11, chord_matchings(11)[index])
    report = audit_gadget(h, gadget_for_cycle(h, range(11)))
    assert report.ok, report.violations


@pytest.mark.parametrize("n", list(range(5, 14)))
@pytest.mark.parametrize("variant", [False, True])
def test_path_tables(n, variant):
    label, rows = path_table(n, variant)
    assert sum(Fraction(p) for p, _ in rows) == 1
    base = [(i, i + 1) for i in range(n - 1)] + [(1, n - 1)] + ([(0, n - 2)] if variant else [])
    h = WeightedMultigraph.from_edges(n, base)
    report = audit_gadget(h, gadget_for_path(h, range(n)))
    assert report.ok, report.violations


@given(st.integers(5, 13), st.booleans(), st.integers(0, 10**6))
def test_paths_tolerate_extra_chords(n, variant, seed):
    rng = random.Random(seed)
    edges = {(i, i + 1) for i in range(n - 1)} | {(1, n - 1)}
    if variant:
        edges.add((0, n - 2))
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    for _ in range(n):
        u, v = sorted(rng.sample(range(n), 2))
        if (u, v) in edges or deg[u] >= 3 or deg[v] >= 3:
            continue
        if not is_triangle_free(WeightedMultigraph.from_edges(n, sorted(edges | {(u, v)}))):
            continue
        edges.add((u, v))
        deg[u] += 1
        deg[v] += 1
    h = WeightedMultigraph.from_edges(n, sorted(edges))
    report = audit_gadget(h, gadget_for_path(h, range(n)))
    assert report.ok, report.violations


def test_path_requires_closing_edge():
    h = WeightedMultigraph.from_edges(6, [(i, i + 1) for i in range(5)])
    with pytest.raises(UnhandledChordPattern):
        gadget_for_path(h, range(6))


def test_auditor_catches_broken_distributions():
    h = cycle(8)
    good = gadget_for_cycle(h, range(8))
    skewed = GadgetDistribution(
        good.kind, good.vertices, good.edges, good.table,
        (GadgetOutcome(good.outcomes[0].probability / 2, good.outcomes[0].family),) + good.outcomes[1:],
    )
    assert any("sum" in v for v in audit_gadget(h, skewed).violations)
    empty = GadgetDistribution(good.kind, good.vertices, good.edges, good.table, (GadgetOutcome(Fraction(1), BalancedFamily()),))
    report = audit_gadget(h, empty)
    assert any(v.startswith("edge") for v in report.violations)
    assert any(v.startswith("vertex") for v in report.violations)


def test_balanced_block_and_chords():
    h = cycle(6, [(0, 3)])
    assert chords(h, range(6)) == {(0, 3)}
    blk = balanced_block(h, range(6))
    assert blk.side_a == frozenset({0, 2, 4})
    with pytest.raises(UnhandledChordPattern):
        balanced_block(cycle(5), range(5))


def test_host_generators_cover_the_requested_ranges():
    labels = [label for label, _, _ in cycle_hosts(12)]
    assert "C2" in labels and "C12" in labels and "C3" not in labels
    assert sum(1 for label in labels if label.startswith("C11+")) == 5478
    assert [label for label, _, _ in path_hosts(5, 6)] == ["P5", "P5+p1p4", "P6", "P6+p1p5"]
