"""Balanced families: disjoint blocks with equal-size independent sides.

A family of total crossing weight ``W`` on a graph of weight ``w`` rounds to a
bisection of weight at least ``(w + W) / 2``.
"""

from __future__ import annotations

import random
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidFamily, TooManyEdges
from .graph import WeightedMultigraph, connected_components, total_weight


@dataclass(frozen=True)
class BalancedBlock:
    side_a: frozenset[int]
    side_b: frozenset[int]

    @classmethod
    def of(cls, side_a: Iterable[int], side_b: Iterable[int]) -> BalancedBlock:
        return cls(frozenset(side_a), frozenset(side_b))

    @property
    def vertices(self) -> frozenset[int]:
        return self.side_a | self.side_b

    @property
    def low(self) -> int:
        return min(self.vertices)


@dataclass(frozen=True)
class BalancedFamily:
    blocks: tuple[BalancedBlock, ...] = ()

    @classmethod
    def of(cls, blocks: Iterable[BalancedBlock]) -> BalancedFamily:
        return cls(tuple(blocks))

    def __add__(self, other: BalancedFamily) -> BalancedFamily:
        return BalancedFamily(self.blocks + other.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def covered(self) -> frozenset[int]:
        return frozenset().union(*(b.vertices for b in self.blocks))


@dataclass(frozen=True)
class Bisection:
    side_x: frozenset[int]
    side_y: frozenset[int]
    cut_weight: Fraction

    @classmethod
    def from_side(cls, g: WeightedMultigraph, side_x: Iterable[int]) -> Bisection:
        x = frozenset(side_x)
        y = frozenset(range(g.n)) - x
        return cls(x, y, g.cut_weight(x))

    def swapped(self) -> Bisection:
        return Bisection(self.side_y, self.side_x, self.cut_weight)


@dataclass(frozen=True)
class FamilyCheck:
    ok: bool
    problems: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def validate_family(g: WeightedMultigraph, fam: BalancedFamily) -> FamilyCheck:
    problems = []
    seen: dict[int, int] = {}
    for i, blk in enumerate(fam.blocks):
        if len(blk.side_a) != len(blk.side_b):
            problems.append(f"block {i}: sides have sizes {len(blk.side_a)} and {len(blk.side_b)}")
        if not blk.side_a:
            problems.append(f"block {i}: empty")
        shared = blk.side_a & blk.side_b
        if shared:
            problems.append(f"block {i}: sides share {sorted(shared)}")
        for v in blk.vertices:
            if not 0 <= v < g.n:
                problems.append(f"block {i}: vertex {v} not in graph")
            elif v in seen and seen[v] != i:
                problems.append(f"blocks {seen[v]} and {i} share vertex {v}")
            seen[v] = i
        for name, side in (("a", blk.side_a), ("b", blk.side_b)):
            for u in side:
                if not 0 <= u < g.n:
                    continue
                for w in g.neighbors(u):
                    if w in side and u < w:
                        problems.append(f"block {i}: side_{name} contains edge {u}-{w}")
    return FamilyCheck(not problems, tuple(problems))


def _require_valid(g: WeightedMultigraph, fam: BalancedFamily) -> None:
    check = validate_family(g, fam)
    if not check:
        raise InvalidFamily("; ".join(check.problems))


def family_weight(g: WeightedMultigraph, fam: BalancedFamily) -> Fraction:
    _require_valid(g, fam)
    return _crossing_weight(g, fam)


def _crossing_weight(g: WeightedMultigraph, fam: BalancedFamily) -> Fraction:
    side: dict[int, tuple[int, int]] = {}
    for i, blk in enumerate(fam.blocks):
        for v in blk.side_a:
            side[v] = (i, 0)
        for v in blk.side_b:
            side[v] = (i, 1)
    total = Fraction(0)
    for e in g.edges:
        su, sv = side.get(e.u), side.get(e.v)
        if su and sv and su[0] == sv[0] and su[1] != sv[1]:
            total += e.weight
    return total


def complete_family(g: WeightedMultigraph, fam: BalancedFamily) -> tuple[BalancedFamily, int | None]:
    """Pair uncovered vertices (ascending id) into trivial blocks.

    Returns the extended family and the single leftover vertex, if any.
    """
    covered = fam.covered
    free = [v for v in range(g.n) if v not in covered]
    extra = [BalancedBlock.of([free[i]], [free[i + 1]]) for i in range(0, len(free) - 1, 2)]
    leftover = free[-1] if len(free) % 2 else None
    return fam + BalancedFamily.of(extra), leftover


def round_to_bisection(
    g: WeightedMultigraph,
    fam: BalancedFamily,
    mode: str = "derandomized",
    seed: int | None = None,
) -> Bisection:
    """Orient every block so its crossing edges are cut.

    ``derandomized``: blocks are fixed in ascending lowest-vertex order, each
    taking the orientation with the larger exact conditional expectation
    (equivalently, the larger cut weight toward already placed vertices;
    unplaced blocks contribute half either way). Ties keep side_a in X.
    ``seeded-random``: each block flips an independent fair coin.
    """
    _require_valid(g, fam)
    full, leftover = complete_family(g, fam)
    blocks = sorted(full.blocks, key=lambda b: b.low)
    side_of: dict[int, int] = {}
    if mode == "seeded-random":
        rng = random.Random(seed)
        flips = [rng.random() < 0.5 for _ in blocks]
    elif mode != "derandomized":
        raise ValueError(f"unknown rounding mode {mode!r}")
    if leftover is not None:
        # after all blocks the two sides are equal, so the tie rule puts it in X
        side_of[leftover] = 0
    for i, blk in enumerate(blocks):
        if mode == "derandomized":
            keep = _toward_placed(g, blk.side_a, side_of) - _toward_placed(g, blk.side_b, side_of)
            flip = keep < 0
        else:
            flip = flips[i]
        a_side = 1 if flip else 0
        for v in blk.side_a:
            side_of[v] = a_side
        for v in blk.side_b:
            side_of[v] = 1 - a_side
    side_x = [v for v, s in side_of.items() if s == 0]
    assert abs(2 * len(side_x) - g.n) <= 1
    return Bisection.from_side(g, side_x)


def _toward_placed(g: WeightedMultigraph, side: frozenset[int], side_of: dict[int, int]) -> Fraction:
    """Weight cut between placed vertices and ``side`` if ``side`` goes to X."""
    total = Fraction(0)
    for v in side:
        for eid in g.incident(v):
            e = g.edge(eid)
            w = e.other(v)
            if side_of.get(w) == 1:
                total += e.weight
            elif side_of.get(w) == 0:
                total -= e.weight
    return total


def forest_to_family(g: WeightedMultigraph, vertices: Iterable[int]) -> BalancedFamily:
    """Family covering every edge of the induced forest ``g[vertices]``.

    Each tree becomes one block: its two colour classes, with the smaller one
    padded by isolated vertices of the forest. A forest with at most
    ``|vertices| / 2`` edges always has enough isolated vertices for this.
    Because the forest is induced, independence inside it is independence in ``g``.
    """
    verts = sorted(set(vertices))
    sub, labels = g.induced_subgraph(verts)
    if 2 * sub.m > sub.n:
        raise TooManyEdges(f"forest has {sub.m} edges on {sub.n} vertices")
    comps = connected_components(sub)
    trees, pool = [], []
    for comp in comps:
        edges_in = len(sub.induced_edges(comp))
        if edges_in != len(comp) - 1:
            raise InvalidFamily(f"induced subgraph on {[labels[v] for v in comp]} is not a tree")
        if len(comp) == 1:
            pool.append(labels[comp[0]])
        else:
            trees.append(comp)
    pool.sort(reverse=True)
    blocks = []
    for comp in trees:
        colour = {comp[0]: 0}
        stack = [comp[0]]
        while stack:
            v = stack.pop()
            for w in sub.neighbors(v):
                if w not in colour:
                    colour[w] = 1 - colour[v]
                    stack.append(w)
        a = [labels[v] for v in comp if colour[v] == 0]
        b = [labels[v] for v in comp if colour[v] == 1]
        small, big = (a, b) if len(a) <= len(b) else (b, a)
        need = len(big) - len(small)
        if need > len(pool):
            raise TooManyEdges("not enough isolated vertices to balance the trees")
        small = small + [pool.pop() for _ in range(need)]
        blocks.append(BalancedBlock.of(small, big))
    return BalancedFamily.of(blocks)


def matching_family(g: WeightedMultigraph, edge_ids: Iterable[int]) -> BalancedFamily:
    """Each matching edge as a block with singleton sides."""
    return BalancedFamily.of(
        BalancedBlock.of([g.edge(i).u], [g.edge(i).v]) for i in sorted(edge_ids)
    )


def rounding_bound(g: WeightedMultigraph, fam: BalancedFamily) -> Fraction:
    return (total_weight(g) + family_weight(g, fam)) / 2
