"""Random balanced families on one cycle or path of ``H - M``.

Each distribution is a finite list of outcomes with exact probabilities. The
tables for 7-cycles, 11-cycles and paths are stored as lists of vertex-position
sets; every set becomes a block through :func:`balanced_block`, which searches
for a split into two equal independent sides.

Position conventions: cycle tables use 0-indexed positions ``c0 .. c(l-1)``
except the 7-cycle tables, which use labels ``1..7``. Path tables use
1-indexed positions ``p1 .. pn``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import UnhandledChordPattern
from .families import BalancedBlock, BalancedFamily
from .graph import WeightedMultigraph

F = Fraction


@dataclass(frozen=True)
class GadgetOutcome:
    probability: Fraction
    family: BalancedFamily


@dataclass(frozen=True)
class GadgetDistribution:
    kind: str  # "cycle" or "path"
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    table: str
    outcomes: tuple[GadgetOutcome, ...]

    def uncovered_probability(self, v: int) -> Fraction:
        return sum((o.probability for o in self.outcomes if v not in o.family.covered), F(0))

    @property
    def low(self) -> int:
        return min(self.vertices)


def balanced_block(h: WeightedMultigraph, vertices: Sequence[int]) -> BalancedBlock:
    """First split (in lexicographic order) into equal independent sides."""
    verts = sorted(vertices)
    if len(verts) % 2:
        raise UnhandledChordPattern(f"odd block {verts}")
    first, rest = verts[0], verts[1:]
    half = len(verts) // 2
    for combo in combinations(rest, half - 1):
        a = (first,) + combo
        b = [v for v in rest if v not in combo]
        if _independent(h, a) and _independent(h, b):
            return BalancedBlock.of(a, b)
    raise UnhandledChordPattern(f"no balanced independent split of {verts}")


def _independent(h: WeightedMultigraph, side: Sequence[int]) -> bool:
    return not any(h.adjacent(u, v) for u, v in combinations(side, 2))


def _family(h: WeightedMultigraph, sets: Sequence[Sequence[int]]) -> BalancedFamily:
    return BalancedFamily.of(balanced_block(h, s) for s in sets)


def _distribution(
    h: WeightedMultigraph,
    kind: str,
    vertices: Sequence[int],
    edges: Sequence[int],
    table: str,
    rows: Sequence[tuple[Fraction, Sequence[Sequence[int]]]],
) -> GadgetDistribution:
    outcomes = tuple(GadgetOutcome(p, _family(h, sets)) for p, sets in rows if p > 0)
    return GadgetDistribution(kind, tuple(vertices), tuple(edges), table, outcomes)


def host_edges(h: WeightedMultigraph, order: Sequence[int], closed: bool) -> tuple[int, ...]:
    """Lowest-id edge between consecutive vertices (both copies for a digon)."""
    if closed and len(order) == 2:
        return tuple(sorted(h.edges_between(order[0], order[1]))[:2])
    pairs = list(zip(order, order[1:]))
    if closed:
        pairs.append((order[-1], order[0]))
    return tuple(min(h.edges_between(u, v)) for u, v in pairs)


# cycles


def chords(h: WeightedMultigraph, cycle: Sequence[int]) -> set[tuple[int, int]]:
    """Position pairs ``(i, j)``, ``i < j``, joined in ``h`` at cyclic distance >= 2."""
    pos = {v: i for i, v in enumerate(cycle)}
    n = len(cycle)
    out = set()
    for i, v in enumerate(cycle):
        for w in h.neighbors(v):
            j = pos.get(w)
            if j is not None and i < j and min(j - i, n - j + i) >= 2:
                out.add((i, j))
    return out


def _dihedral(n: int):
    for start in range(n):
        for step in (1, -1):
            yield lambda p, s=start, d=step: (s + d * p) % n


def _norm(pairs, sigma) -> set[tuple[int, int]]:
    return {tuple(sorted((sigma(a), sigma(b)))) for a, b in pairs}


def gadget_for_cycle(
    h: WeightedMultigraph, cycle: Sequence[int], edges: Sequence[int] | None = None
) -> GadgetDistribution:
    cycle = tuple(cycle)
    l = len(cycle)
    if edges is None:
        edges = host_edges(h, cycle, closed=True)
    if l < 2 or l == 3:
        raise UnhandledChordPattern(f"cycle of length {l}")

    def rows_at(rows):
        return [(p, [[cycle[i % l] for i in s] for s in sets]) for p, sets in rows]

    def build(table, rows):
        return _distribution(h, "cycle", cycle, edges, table, rows_at(rows))

    if l in (2, 6):
        return build(f"cycle-{l}", [(F(7, 8), [range(l)]), (F(1, 8), [])])
    if l == 5:
        return build("cycle-5", [(F(1, 5), [[j for j in range(5) if j != i]]) for i in range(5)])
    if l == 7:
        return _seven_cycle(h, cycle, edges)
    if l == 11:
        return _eleven_cycle(h, cycle, edges)

    k, r = divmod(l, 4)
    if 7 * r <= 4 * k:
        x = F(7 * l, 32 * k)
        rows = [(x / l, [range(i + 4 * t, i + 4 * t + 4) for t in range(k)]) for i in range(l)]
        rows.append((1 - x, []))
        return build("cycle-thinned", rows)
    if r not in (2, 3):  # pragma: no cover - only l = 5 has r = 1 and 7r > 4k
        raise UnhandledChordPattern(f"no construction for cycle length {l}")
    y = F(7 * r - 4 * k, 16)
    rows = []
    for i in range(l):
        quads = [range(i + 4 * t, i + 4 * t + 4) for t in range(k)]
        if r == 2:
            extra = [i + l - 2, i + l - 1]
        else:
            extra = [i + l - 3, i + l - 2]
        rows.append((y / l, quads + [extra]))
        rows.append(((1 - y) / l, quads))
    return build("cycle-mixed", rows)


def _rows(spec):
    """``[(eighths, [set, ...]), ...]`` -> exact probabilities."""
    return [(F(p, 8), sets) for p, sets in spec]


# 7-cycles, labels 1..7 along the cycle
_C7_ONE_CHORD = _rows(
    [
        (1, [[1, 2, 3, 4, 5, 6]]),
        (1, [[1, 2, 3, 4, 5, 7]]),
        (1, [[1, 2, 3, 4, 6, 7]]),
        (1, [[1, 2, 3, 5, 6, 7]]),
        (1, [[1, 7], [3, 4, 5, 6]]),
        (1, [[2, 3], [4, 5, 6, 7]]),
        (1, [[1, 2], [4, 5, 6, 7]]),
        (1, [[1, 5, 6, 7], [3, 4]]),
    ]
)
_C7_CROSSING_CHORDS = _rows(
    [
        (1, [[1, 2, 3, 4, 5, 7]]),
        (1, [[1, 2, 3, 4, 6, 7]]),
        (1, [[1, 2, 3, 5, 6, 7]]),
        (1, [[1, 2], [4, 5, 6, 7]]),
        (1, [[1, 2], [3, 4, 5, 6]]),
        (1, [[1, 7], [2, 3, 4, 5]]),
        (1, [[1, 5, 6, 7], [3, 4]]),
        (1, [[2, 3], [4, 5, 6, 7]]),
    ]
)
_C7_THREE_CHORDS = _rows(
    [
        (2, [[2, 3, 4, 5, 6, 7]]),
        (1, [[1, 2, 3, 4, 5, 6]]),
        (1, [[1, 3, 4, 5, 6, 7]]),
        (1, [[1, 2, 6, 7], [3, 4]]),
        (1, [[1, 2, 3, 7], [5, 6]]),
        (1, [[1, 2, 3, 7], [4, 5]]),
        (1, [[1, 2, 6, 7], [4, 5]]),
    ]
)
# canonical chord sets (labels 1..7) and the table each one uses
_C7_PATTERNS = [
    ("cycle-7-one-chord", {(1, 4)}, _C7_ONE_CHORD),
    ("cycle-7-two-chords", {(1, 4), (3, 7)}, _C7_ONE_CHORD),
    ("cycle-7-crossing-chords", {(1, 4), (2, 6)}, _C7_CROSSING_CHORDS),
    ("cycle-7-three-chords", {(2, 5), (4, 7), (3, 6)}, _C7_THREE_CHORDS),
]


def _seven_cycle(h, cycle, edges) -> GadgetDistribution:
    actual = chords(h, cycle)
    if not actual:
        rows = [(F(1, 7), [[cycle[j] for j in range(7) if j != i]]) for i in range(7)]
        return _distribution(h, "cycle", cycle, edges, "cycle-7-chordless", rows)
    for table, canon, rows in _C7_PATTERNS:
        canon0 = {(a - 1, b - 1) for a, b in canon}
        if len(canon0) != len(actual):
            continue
        for sigma in _dihedral(7):
            if _norm(canon0, sigma) == actual:
                mapped = [(p, [[cycle[sigma(i - 1)] for i in s] for s in sets]) for p, sets in rows]
                return _distribution(h, "cycle", cycle, edges, table, mapped)
    raise UnhandledChordPattern(f"7-cycle chord pattern {sorted(actual)}")


_C11_WITH_PENTAGON = _rows(
    [
        (1, [[0, 1, 2, 10], [4, 5, 6, 7, 8, 9]]),
        (1, [[0, 8, 9, 10], [1, 2, 3, 4], [6, 7]]),
        (1, [[0, 1, 2, 3], [4, 5], [6, 7, 8, 9]]),
        (1, [[0, 1], [3, 4, 5, 6], [7, 8, 9, 10]]),
        (1, [[0, 8, 9, 10], [1, 2, 3, 4], [5, 6]]),
        (1, [[0, 1, 9, 10], [2, 3, 4, 5], [7, 8]]),
        (1, [[0, 1, 2, 10], [3, 4], [5, 6, 7, 8]]),
        (1, [[2, 3], [4, 5, 6, 7], [9, 10]]),
    ]
)
_C11_PLAIN = _rows(
    [
        (1, [[0, 1, 2, 10], [4, 5, 6, 7, 8, 9]]),
        (1, [[0, 8, 9, 10], [1, 2, 3, 4], [6, 7]]),
        (1, [[0, 1, 2, 3], [4, 5], [6, 7, 8, 9]]),
        (1, [[0, 1], [3, 4, 5, 6], [7, 8, 9, 10]]),
        (1, [[0, 8, 9, 10], [1, 2, 3, 4], [5, 6]]),
        (1, [[0, 1, 9, 10], [2, 3, 4, 5]]),
        (1, [[0, 1, 2, 10], [3, 4, 5, 6, 7, 8]]),
        (1, [[2, 3], [5, 6, 7, 8], [9, 10]]),
    ]
)


def _eleven_cycle(h, cycle, edges) -> GadgetDistribution:
    actual = chords(h, cycle)
    short = {(i, j) for i, j in actual if min(j - i, 11 - j + i) == 4}
    if not short:
        sigma, table, rows = (lambda p: p), "cycle-11-plain", _C11_PLAIN
    else:
        for sigma in _dihedral(11):
            # relabel so that c0c4 is a chord while c5c9 and c4c8 are not
            c04, c59, c48 = (tuple(sorted((sigma(a), sigma(b)))) for a, b in [(0, 4), (5, 9), (4, 8)])
            if c04 in actual and c59 not in actual and c48 not in actual:
                break
        else:
            raise UnhandledChordPattern(f"11-cycle chord pattern {sorted(actual)}")
        table, rows = "cycle-11-pentagon", _C11_WITH_PENTAGON
    mapped = [(p, [[cycle[sigma(i)] for i in s] for s in sets]) for p, sets in rows]
    return _distribution(h, "cycle", cycle, edges, table, mapped)


# paths


def _quads(start: int, end: int) -> list[list[int]]:
    """Consecutive 4-sets ``{s..s+3}, {s+4..s+7}, ...`` ending exactly at ``end``."""
    if (end - start + 1) % 4:
        raise ValueError(f"cannot tile {start}..{end} by 4-sets")
    return [list(range(s, s + 4)) for s in range(start, end + 1, 4)]


def _pairs(start: int, end: int) -> list[list[int]]:
    return [[s, s + 1] for s in range(start, end, 2)]


def path_table(n: int, chord_1_n1: bool) -> tuple[str, list[tuple[Fraction, list[list[int]]]]]:
    """Rows for a path ``p1..pn`` (1-indexed positions).

    ``chord_1_n1`` says whether ``p1`` and ``p(n-1)`` are adjacent in the host;
    only without that edge may the wrap-around set ``{p(n-2), p(n-1), pn, p1}``
    be used.
    """
    if n < 5:
        raise UnhandledChordPattern(f"path with {n} vertices")
    Q, P = _quads, _pairs
    wrap = [n - 2, n - 1, n, 1]
    case = "b" if chord_1_n1 else "a"
    if n == 5:
        return "path-5", _rows(
            [(3, [[2, 3, 4, 5]]), (2, [[1, 2, 3, 4]]), (2, [[1, 2], [4, 5]]), (1, [[1, 2]])]
        )
    r = n % 4
    if r == 0:
        rows = [
            (2, Q(1, n)),
            (2, [[1, 2]] + Q(3, n - 2) + [[n - 1, n]]),
            (1, Q(2, n - 3) + [[n - 2, n - 1]]),
            (1, [[2, 3]] + Q(4, n - 1)),
        ]
        if chord_1_n1:
            rows += [(1, [[1, 2], [n - 1, n]]), (1, P(2, n - 1))]
        else:
            rows += [(1, [[1, 2]]), (1, P(2, n - 3) + [wrap])]
    elif r == 1:
        rows = [(2, Q(1, n - 1)), (2, Q(2, n))]
        if chord_1_n1:
            rows += [
                (2, [[1, 2]] + Q(3, n - 3) + [[n - 1, n]]),
                (1, [[1, 2]] + Q(4, n - 2) + [[n - 1, n]]),
                (1, [[2, 3], [n - 2, n - 1]]),
            ]
        else:
            rows += [
                (1, [[1, 2]] + Q(3, n - 3) + [[n - 1, n]]),
                (1, [[1, 2]] + Q(4, n - 2) + [[n - 1, n]]),
                (1, [[1, 2]] + Q(4, n - 2)),
                (1, [[2, 3], wrap]),
            ]
    elif r == 2:
        rows = [
            (2, Q(1, n - 2) + [[n - 1, n]]),
            (2, [[1, 2]] + Q(3, n)),
            (1, Q(2, n - 1)),
            (1, [[2, 3]] + Q(4, n - 3) + [[n - 2, n - 1]]),
        ]
        if chord_1_n1:
            rows += [(1, [[1, 2], [n - 1, n]]), (1, P(2, n - 1))]
        else:
            rows += [(1, [[1, 2]]), (1, P(2, n - 3) + [wrap])]
    else:
        rows = [
            (2, Q(1, n - 3) + [[n - 1, n]]),
            (2, [[1, 2]] + Q(3, n - 1)),
            (1, [[2, 3]] + Q(4, n)),
            (1, [[1, 2]] + Q(4, n)),
        ]
        if chord_1_n1:
            rows += [(1, Q(2, n - 2) + [[n - 1, n]]), (1, [[2, 3], [n - 2, n - 1]])]
        else:
            rows += [(1, Q(2, n - 2)), (1, [[2, 3], wrap])]
    return f"path-{r}{case}", _rows(rows)


def gadget_for_path(
    h: WeightedMultigraph, path: Sequence[int], edges: Sequence[int] | None = None
) -> GadgetDistribution:
    """Distribution on the path ``p1..pn`` whose ends satisfy ``p2 ~ pn`` in ``h``."""
    path = tuple(path)
    n = len(path)
    if n < 5:
        raise UnhandledChordPattern(f"path with {n} vertices")
    if not h.adjacent(path[1], path[-1]):
        raise UnhandledChordPattern("p2 and pn are not adjacent")
    if edges is None:
        edges = host_edges(h, path, closed=False)
    table, rows = path_table(n, h.adjacent(path[0], path[-2]))
    mapped = [(p, [[path[i - 1] for i in s] for s in sets]) for p, sets in rows]
    return _distribution(h, "path", path, edges, table, mapped)
