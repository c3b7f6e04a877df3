"""Host graphs for exhaustive gadget audits.

Cycle hosts: a digon, every chordless cycle, and every triangle-free chord
pattern on 7- and 11-cycles (chords form a matching because the host has
maximum degree 3, and a chord between vertices at distance 2 closes a
triangle). Path hosts: ``p1..pn`` with the edge ``p2 pn``, with and without
the edge ``p1 p(n-1)``.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

from .gadgets import GadgetDistribution, gadget_for_cycle, gadget_for_path
from .graph import WeightedMultigraph
from .oracle import AuditReport, audit_gadget

CHORDED_LENGTHS = (7, 11)


@dataclass
class AuditCase:
    label: str
    host: WeightedMultigraph
    dist: GadgetDistribution
    report: AuditReport


def chord_matchings(length: int) -> list[tuple[tuple[int, int], ...]]:
    """Non-empty matchings of chords at cyclic distance at least 3."""
    candidates = [
        (i, j) for i in range(length) for j in range(i + 1, length) if min(j - i, length - j + i) >= 3
    ]
    out: list[tuple[tuple[int, int], ...]] = []

    def grow(start: int, used: frozenset[int], chosen: tuple[tuple[int, int], ...]) -> None:
        if chosen:
            out.append(chosen)
        for k in range(start, len(candidates)):
            i, j = candidates[k]
            if i not in used and j not in used:
                grow(k + 1, used | {i, j}, chosen + ((i, j),))

    grow(0, frozenset(), ())
    return out


def _cycle_host(length: int, extra=()) -> WeightedMultigraph:
    if length == 2:
        return WeightedMultigraph.from_edges(2, [(0, 1), (0, 1)])
    return WeightedMultigraph.from_edges(length, [(i, (i + 1) % length) for i in range(length)] + list(extra))


def cycle_hosts(max_len: int) -> Iterator[tuple[str, WeightedMultigraph, tuple[int, ...]]]:
    for length in [2] + list(range(4, max_len + 1)):
        yield f"C{length}", _cycle_host(length), tuple(range(length))
        if length in CHORDED_LENGTHS:
            for pattern in chord_matchings(length):
                label = f"C{length}+" + ",".join(f"{i}-{j}" for i, j in pattern)
                yield label, _cycle_host(length, pattern), tuple(range(length))


def path_hosts(min_len: int, max_len: int) -> Iterator[tuple[str, WeightedMultigraph, tuple[int, ...]]]:
    for n in range(max(min_len, 5), max_len + 1):
        base = [(i, i + 1) for i in range(n - 1)] + [(1, n - 1)]
        yield f"P{n}", WeightedMultigraph.from_edges(n, base), tuple(range(n))
        yield f"P{n}+p1p{n - 1}", WeightedMultigraph.from_edges(n, base + [(0, n - 2)]), tuple(range(n))


def run_audit(family: str, max_len: int) -> list[AuditCase]:
    if family == "cycles":
        hosts, build = cycle_hosts(max_len), gadget_for_cycle
    elif family == "paths":
        hosts, build = path_hosts(5, max_len), gadget_for_path
    else:
        raise ValueError(f"unknown audit family {family!r}")
    cases = []
    for label, h, order in hosts:
        dist = build(h, order)
        cases.append(AuditCase(label, h, dist, audit_gadget(h, dist)))
    return cases
