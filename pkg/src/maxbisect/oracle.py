"""Exhaustive ground truth for small graphs.

Maximum bisection and maximum cut are found by enumerating every vertex
subset that contains vertex 0. Evaluation is vectorised with numpy: weights
are scaled to int64 when their common denominator allows it, otherwise float64
values screen the subsets and every near-optimal candidate is re-scored with
exact rationals.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import BudgetExceeded
from .families import Bisection, validate_family
from .gadgets import GadgetDistribution
from .graph import WeightedMultigraph, total_weight

DEFAULT_NMAX = 24
_CHUNK = 1 << 20
_INT_LIMIT = 1 << 52


def oracle_nmax() -> int:
    return int(os.environ.get("BISECT_ORACLE_NMAX", DEFAULT_NMAX))


def _popcount(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a.astype(np.uint64)).astype(np.int64)


def _enumerate(g: WeightedMultigraph, sizes: set[int] | None) -> tuple[Fraction, frozenset[int]]:
    """Best subset X containing vertex 0 (with ``|X|`` in ``sizes`` if given)."""
    n = g.n
    if n > oracle_nmax():
        raise BudgetExceeded(f"n = {n} exceeds the oracle budget {oracle_nmax()}")
    if n == 0:
        return Fraction(0), frozenset()
    edges = [e for e in g.edges if e.weight != 0]
    denom = 1
    for e in edges:
        denom = math.lcm(denom, e.weight.denominator)
    exact_ints = denom * total_weight(g) < _INT_LIMIT
    if exact_ints:
        weights = np.array([int(e.weight * denom) for e in edges], dtype=np.int64)
    else:
        weights = np.array([float(e.weight) for e in edges], dtype=np.float64)
    us = [e.u for e in edges]
    vs = [e.v for e in edges]

    def side_bits(masks: np.ndarray, v: int) -> np.ndarray:
        # bit v-1 of the mask says whether vertex v (v >= 1) joins vertex 0's side
        if v == 0:
            return np.ones_like(masks)
        return (masks >> (v - 1)) & 1

    total_masks = 1 << (n - 1)
    best_val = None
    candidates: list = []
    eps = 1e-9 * (float(total_weight(g)) + 1)
    for start in range(0, total_masks, _CHUNK):
        masks = np.arange(start, min(total_masks, start + _CHUNK), dtype=np.int64)
        if sizes is not None:
            keep = np.isin(_popcount(masks) + 1, list(sizes))
            masks = masks[keep]
            if masks.size == 0:
                continue
        values = np.zeros(masks.shape, dtype=weights.dtype)
        for w, u, v in zip(weights, us, vs):
            values += w * (side_bits(masks, u) != side_bits(masks, v))
        top = values.max()
        if exact_ints:
            if best_val is None or top > best_val:
                best_val, candidates = top, [int(masks[np.argmax(values)])]
        else:
            if best_val is None or top > best_val:
                best_val = top
                candidates = [c for c in candidates if c[0] >= best_val - eps]
            keep = values >= best_val - eps
            candidates.extend(zip(values[keep].tolist(), masks[keep].tolist()))
    if exact_ints:
        mask = candidates[0]
        side = _side_of_mask(mask, n)
        return g.cut_weight(side), side
    best = None
    for _, mask in candidates:
        side = _side_of_mask(mask, n)
        val = g.cut_weight(side)
        if best is None or val > best[0] or (val == best[0] and mask < best[2]):
            best = (val, side, mask)
    return best[0], best[1]


def _side_of_mask(mask: int, n: int) -> frozenset[int]:
    return frozenset([0] + [v for v in range(1, n) if (mask >> (v - 1)) & 1])


def exact_max_bisection(g: WeightedMultigraph) -> tuple[Fraction, Bisection]:
    sizes = {g.n // 2, (g.n + 1) // 2}
    if g.n == 0:
        return Fraction(0), Bisection(frozenset(), frozenset(), Fraction(0))
    weight, side = _enumerate(g, sizes)
    return weight, Bisection.from_side(g, side)


def exact_max_cut(g: WeightedMultigraph) -> tuple[Fraction, frozenset[int]]:
    return _enumerate(g, None)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reasons: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def verify_bisection(g: WeightedMultigraph, b: Bisection, bound: Fraction | None = None) -> Verdict:
    reasons = []
    x, y = set(b.side_x), set(b.side_y)
    if x & y:
        reasons.append(f"sides overlap on {sorted(x & y)}")
    if x | y != set(range(g.n)):
        reasons.append("sides do not cover the vertex set exactly")
    if abs(len(x) - len(y)) > 1:
        reasons.append(f"balance: sides have sizes {len(x)} and {len(y)}")
    actual = g.cut_weight(x)
    if actual != b.cut_weight:
        reasons.append(f"weight mismatch: stored {b.cut_weight}, recomputed {actual}")
    if bound is not None and actual < bound:
        reasons.append(f"bound: cut {actual} < {bound}")
    return Verdict(not reasons, tuple(reasons))


def is_edge_colorable(g: WeightedMultigraph, k: int) -> bool:
    """Exhaustive backtracking test for a proper ``k``-edge-colouring."""
    order = sorted(g.edges, key=lambda e: e.id)
    used: list[set[int]] = [set() for _ in range(g.n)]

    def place(i: int, top: int) -> bool:
        if i == len(order):
            return True
        e = order[i]
        # colours beyond top+1 are symmetric to top+1
        for c in range(min(k, top + 2)):
            if c in used[e.u] or c in used[e.v]:
                continue
            used[e.u].add(c)
            used[e.v].add(c)
            if place(i + 1, max(top, c)):
                return True
            used[e.u].discard(c)
            used[e.v].discard(c)
        return False

    return place(0, -1)


# gadget audit

CLAIM_RULES = {
    "cycle-general": "edges >= 5/8, every vertex excluded with probability exactly 1/8",
    "cycle-5": "edges >= 3/5, every vertex excluded with probability exactly 1/5",
    "cycle-7": "edges >= 5/8, every vertex excluded with probability in [1/8, 1/4]",
    "cycle-11": "edges >= 5/8, chord-free vertices excluded with probability in [1/8, 1/4]",
    "path": "edges >= 5/8, vertices excluded with probability >= 1/8 except p2 (and p_{n-1} "
    "when p1 p_{n-1} is an edge)",
}


@dataclass
class AuditReport:
    claim: str
    violations: list[str] = field(default_factory=list)
    edge_inclusion: dict[int, Fraction] = field(default_factory=dict)
    vertex_exclusion: dict[int, Fraction] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations


def _claim_for(dist: GadgetDistribution) -> str:
    if dist.kind == "path":
        return "path"
    return {5: "cycle-5", 7: "cycle-7", 11: "cycle-11"}.get(len(dist.vertices), "cycle-general")


def audit_gadget(h: WeightedMultigraph, dist: GadgetDistribution, claim: str | None = None) -> AuditReport:
    """Walk the whole support of ``dist`` and check the named claim exactly."""
    claim = claim or _claim_for(dist)
    report = AuditReport(claim)
    bad = report.violations
    host = list(dist.vertices)
    host_set = set(host)
    total = sum((o.probability for o in dist.outcomes), Fraction(0))
    if total != 1:
        bad.append(f"probabilities sum to {total}")
    for i, o in enumerate(dist.outcomes):
        if not (0 < o.probability <= 1):
            bad.append(f"outcome {i}: probability {o.probability} outside (0, 1]")
        check = validate_family(h, o.family)
        if not check:
            bad.append(f"outcome {i}: invalid family: {'; '.join(check.problems)}")
        stray = o.family.covered - host_set
        if stray:
            bad.append(f"outcome {i}: blocks leave the host at {sorted(stray)}")

    for eid in dist.edges:
        e = h.edge(eid)
        p = Fraction(0)
        for o in dist.outcomes:
            for blk in o.family.blocks:
                if (e.u in blk.side_a and e.v in blk.side_b) or (e.u in blk.side_b and e.v in blk.side_a):
                    p += o.probability
        report.edge_inclusion[eid] = p
    for v in host:
        report.vertex_exclusion[v] = sum(
            (o.probability for o in dist.outcomes if v not in o.family.covered), Fraction(0)
        )

    edge_floor = Fraction(3, 5) if claim == "cycle-5" else Fraction(5, 8)
    for eid, p in report.edge_inclusion.items():
        if p < edge_floor:
            bad.append(f"edge {eid}: inclusion {p} < {edge_floor}")

    def need(v: int, lo: Fraction | None, hi: Fraction | None) -> None:
        p = report.vertex_exclusion[v]
        if (lo is not None and p < lo) or (hi is not None and p > hi):
            bad.append(f"vertex {v}: exclusion {p} outside [{lo}, {hi}]")

    eighth, quarter = Fraction(1, 8), Fraction(1, 4)
    if claim == "cycle-general":
        for v in host:
            need(v, eighth, eighth)
    elif claim == "cycle-5":
        for v in host:
            need(v, Fraction(1, 5), Fraction(1, 5))
    elif claim == "cycle-7":
        for v in host:
            need(v, eighth, quarter)
    elif claim == "cycle-11":
        chorded = _chord_vertices(h, host)
        for v in host:
            if v not in chorded:
                need(v, eighth, quarter)
    elif claim == "path":
        exempt = {host[1]}
        if h.adjacent(host[0], host[-2]):
            exempt.add(host[-2])
        for v in host:
            if v not in exempt:
                need(v, eighth, None)
    else:
        bad.append(f"unknown claim {claim!r}")
    return report


def _chord_vertices(h: WeightedMultigraph, cycle: list[int]) -> set[int]:
    pos = {v: i for i, v in enumerate(cycle)}
    n = len(cycle)
    out = set()
    for v in cycle:
        for w in h.neighbors(v):
            if w in pos:
                d = abs(pos[v] - pos[w])
                if min(d, n - d) >= 2:
                    out.add(v)
    return out
