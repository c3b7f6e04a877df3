"""Bisections of bounded-degree graphs.

``bisect_via_chromatic_index`` rounds the heaviest colour class of a Vizing
colouring. ``solve_subcubic`` reaches two thirds of the total weight on any
graph of maximum degree 3 by padding it to a cubic multigraph with zero-weight
edges and working from a bisection whose sides both induce forests.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .errors import GuaranteeViolation, InitializationExhausted, NotSimple, PreconditionViolated, TooManyEdges
from .families import Bisection, forest_to_family, matching_family, round_to_bisection
from .graph import WeightedMultigraph, graph_digest, max_degree, total_weight
from .matching import heaviest_color_class, vizing_color
from .report import SolverReport

TWO_THIRDS = Fraction(2, 3)
MAX_RESTARTS = 200
MOVES_PER_VERTEX = 50
EXHAUSTIVE_LIMIT = 16
SWAP_ATTEMPTS = 20


def chromatic_bound(k: int) -> Fraction:
    """Guaranteed fraction ``(k + 2) / (2(k + 1))`` for maximum degree ``k``."""
    return Fraction(k + 2, 2 * (k + 1))


def bisect_via_chromatic_index(g: WeightedMultigraph) -> tuple[Bisection, Fraction]:
    """Round the heaviest colour class of a ``Delta + 1`` edge colouring.

    Returns the bisection and the guaranteed weight for the graph's maximum
    degree.
    """
    if not g.is_simple():
        raise NotSimple("chromatic-index rounding needs a simple graph")
    w = total_weight(g)
    coloring = vizing_color(g)
    heavy = heaviest_color_class(g, coloring)
    b = round_to_bisection(g, matching_family(g, heavy))
    guaranteed = chromatic_bound(max_degree(g)) * w
    if coloring.count and b.cut_weight < Fraction(coloring.count + 1, 2 * coloring.count) * w:
        raise GuaranteeViolation("chromatic rounding fell below (c+1)/(2c) of the weight")
    if b.cut_weight < guaranteed:
        raise GuaranteeViolation("chromatic rounding fell below its guarantee")
    return b, guaranteed


# forest bisections of cubic multigraphs


@dataclass(frozen=True)
class ForestCertificate:
    """``side_x`` of the bisection has max induced degree <= 1; ``side_y`` induces
    a forest with at most ``|side_y| / 2`` edges."""

    cut_size: int
    x_max_degree: int
    y_edges: int
    restarts: int


class _Sides:
    """Incremental bookkeeping for a two-sided vertex partition of ``h``."""

    def __init__(self, h: WeightedMultigraph, side_x):
        self.h = h
        self.x = set(side_x)
        self.y = set(range(h.n)) - self.x

    def side(self, v: int) -> set[int]:
        return self.x if v in self.x else self.y

    def inner_degree(self, v: int, side: set[int]) -> int:
        return sum(1 for eid in self.h.incident(v) if self.h.edge(eid).other(v) in side)

    def swap(self, a: int, b: int) -> None:
        sa, sb = self.side(a), self.side(b)
        sa.remove(a)
        sb.remove(b)
        sa.add(b)
        sb.add(a)

    def cut_size(self) -> int:
        return sum(1 for e in self.h.edges if (e.u in self.x) != (e.v in self.x))


def is_forest(h: WeightedMultigraph, side) -> bool:
    parent = {v: v for v in side}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in h.edges:
        if e.u in parent and e.v in parent:
            a, b = find(e.u), find(e.v)
            if a == b:
                return False
            parent[a] = b
    return True


def _cycle_core(h: WeightedMultigraph, side: set[int]) -> list[int]:
    """Vertices left after repeatedly deleting vertices of induced degree <= 1."""
    deg = {v: sum(1 for eid in h.incident(v) if h.edge(eid).other(v) in side) for v in side}
    alive = set(side)
    queue = [v for v in side if deg[v] <= 1]
    while queue:
        v = queue.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for eid in h.incident(v):
            w = h.edge(eid).other(v)
            if w in alive:
                deg[w] -= 1
                if deg[w] <= 1:
                    queue.append(w)
    return sorted(alive)


def _initial_forest_split(h: WeightedMultigraph, rng: random.Random) -> tuple[set[int], int]:
    n = h.n
    verts = list(range(n))
    for restart in range(MAX_RESTARTS):
        rng.shuffle(verts)
        s = _Sides(h, verts[: n // 2])
        for _ in range(MOVES_PER_VERTEX * n):
            if not is_forest(h, s.x):
                bad, other = s.x, s.y
            elif not is_forest(h, s.y):
                bad, other = s.y, s.x
            else:
                return set(s.x), restart
            core = _cycle_core(h, bad)
            top = max(s.inner_degree(v, bad) for v in core)
            v = rng.choice([u for u in core if s.inner_degree(u, bad) == top])
            partners = [u for u in sorted(other) if is_forest(h, (other - {u}) | {v})]
            u = rng.choice(partners or sorted(other))
            s.swap(v, u)
        if is_forest(h, s.x) and is_forest(h, s.y):
            return set(s.x), restart
    if n <= EXHAUSTIVE_LIMIT:
        for combo in itertools.combinations(range(1, n), n // 2 - 1):
            x = {0, *combo}
            if is_forest(h, x) and is_forest(h, set(range(n)) - x):
                return x, MAX_RESTARTS
    raise InitializationExhausted(f"no forest bisection found for n = {n}")


def _close_under_swaps(h: WeightedMultigraph, s: _Sides) -> None:
    """Apply improving single-pair swaps (by cut size) that keep both sides forests."""
    improved = True
    while improved:
        improved = False
        for a in sorted(s.x):
            da_x, da_y = s.inner_degree(a, s.x), s.inner_degree(a, s.y)
            for b in sorted(s.y):
                gain = da_x - da_y + s.inner_degree(b, s.y) - s.inner_degree(b, s.x) + 2 * h.multiplicity(a, b)
                if gain <= 0:
                    continue
                new_x = (s.x - {a}) | {b}
                new_y = (s.y - {b}) | {a}
                if is_forest(h, new_x) and is_forest(h, new_y):
                    s.swap(a, b)
                    improved = True
                    break
            if improved:
                break


def forest_bisection(h: WeightedMultigraph, seed: int | None = 0) -> tuple[Bisection, ForestCertificate]:
    """Bisection of a cubic multigraph with forest sides, closed under improving swaps.

    The returned ``side_x`` is the side whose induced subgraph is a matching.
    """
    if h.n % 2:
        raise PreconditionViolated("forest bisection needs an even number of vertices")
    for v in range(h.n):
        if h.degree(v) != 3:
            raise PreconditionViolated(f"vertex {v} has degree {h.degree(v)}, expected 3")
    rng = random.Random(seed)
    x, restarts = _initial_forest_split(h, rng)
    s = _Sides(h, x)
    _close_under_swaps(h, s)
    dx = max((s.inner_degree(v, s.x) for v in s.x), default=0)
    dy = max((s.inner_degree(v, s.y) for v in s.y), default=0)
    if dx > 1 and dy <= 1:
        s.x, s.y = s.y, s.x
        dx = dy
    if dx > 1:  # pragma: no cover - closure rules this out
        raise InitializationExhausted("closed forest bisection with both sides of degree >= 2")
    y_edges = len(h.induced_edges(s.y))
    if 2 * y_edges > len(s.y):  # pragma: no cover - equal sides of a cubic graph
        raise InitializationExhausted("forest side has too many edges")
    cert = ForestCertificate(s.cut_size(), dx, y_edges, restarts)
    return Bisection.from_side(h, s.x), cert


# the two-thirds pipeline


class _Retry(Exception):
    """A post-closure fact failed; start over from a fresh seed."""


def _pad(g: WeightedMultigraph) -> WeightedMultigraph:
    """Join the two lowest-id deficient vertices by zero-weight edges until at
    most one vertex has degree below 3."""
    deficit = [3 - g.degree(v) for v in range(g.n)]
    extra = []
    while True:
        low = [v for v in range(g.n) if deficit[v] > 0][:2]
        if len(low) < 2:
            break
        a, b = low
        extra.append((a, b, 0))
        deficit[a] -= 1
        deficit[b] -= 1
    return g.with_edges(extra)[0]


def _round_forests(p: WeightedMultigraph, x, y) -> Bisection:
    fam = forest_to_family(p, x) + forest_to_family(p, y)
    return round_to_bisection(p, fam)


def _cubic_case(p: WeightedMultigraph, seed) -> tuple[Bisection, str]:
    fb, _ = forest_bisection(p, seed)
    if fb.cut_weight >= TWO_THIRDS * total_weight(p):
        return fb, "cubic-forest"
    return _round_forests(p, fb.side_x, fb.side_y), "cubic-rounded"


def _pendant_case(p: WeightedMultigraph, z: int, seed) -> tuple[Bisection, str]:
    """``z`` is the only vertex of ``p`` below degree 3 and has degree 1."""
    x, y = p.n, p.n + 1
    h = p.with_vertices(2).with_edges([(x, y, 0), (x, y, 0), (x, z, 0), (y, z, 0)])[0]
    w = total_weight(h)
    fb, _ = forest_bisection(h, seed)
    side_x, side_y = set(fb.side_x), set(fb.side_y)
    if y in side_x:
        x, y = y, x  # the two added vertices are interchangeable
    if x not in side_x or y not in side_y:  # pragma: no cover - the doubled edge splits them
        raise _Retry("added vertices on one side")
    real = set(range(p.n))

    def strip(sx) -> Bisection:
        return Bisection.from_side(p, set(sx) & real)

    if fb.cut_weight >= TWO_THIRDS * w:
        return strip(side_x), "pendant-forest"
    if z in side_y:
        return _round_forests(p, side_x - {x}, side_y - {y}), "pendant-split"

    s = _Sides(h, side_x)
    if max(s.inner_degree(v, s.y) for v in s.y) <= 1:
        return _round_forests(p, side_x - {x}, side_y - {y}), "pendant-matching"
    # move z across in exchange for a vertex of Y with two neighbours in Y
    heavy = [v for v in sorted(s.y) if s.inner_degree(v, s.y) >= 2]
    v = heavy[0]
    if s.inner_degree(v, s.y) != 2:
        raise _Retry("vertex with three neighbours on the forest side")
    (v_out,) = [h.edge(eid).other(v) for eid in h.incident(v) if h.edge(eid).other(v) in s.x]
    if s.inner_degree(v_out, s.x) != 0:
        raise _Retry("neighbour across is not isolated on its side")
    before = s.cut_size()
    s.swap(v, z)
    if not (is_forest(h, s.x) and is_forest(h, s.y)):
        raise _Retry("swap broke a forest")
    if max(s.inner_degree(u, s.x) for u in s.x) > 1:
        raise _Retry("swap raised the matching side above degree 1")
    if 2 * len(h.induced_edges(s.y)) > len(s.y) or s.cut_size() < before:
        raise _Retry("swap broke the side conditions")
    if h.cut_weight(s.x) >= TWO_THIRDS * w:
        return strip(s.x), "pendant-swapped-forest"
    return _round_forests(p, s.x - {x}, s.y - {y}), "pendant-swapped"


def _two_thirds_bisection(g: WeightedMultigraph, seed) -> tuple[Bisection, str]:
    if g.m == 0:
        return Bisection.from_side(g, range((g.n + 1) // 2)), "edgeless"
    p = _pad(g)
    low = [v for v in range(p.n) if p.degree(v) < 3]
    if not low:
        b, case = _cubic_case(p, seed)
    else:
        (z,) = low
        d = p.degree(z)
        if d == 0:
            # an isolated leftover gets a partner through a tripled zero edge
            q = p.with_vertices(1).with_edges([(z, p.n, 0)] * 3)[0]
            b, case = _cubic_case(q, seed)
            case = "isolated-" + case
        elif d == 1:
            b, case = _pendant_case(p, z, seed)
        else:
            q = p.with_vertices(1).with_edges([(z, p.n, 0)])[0]
            b, case = _pendant_case(q, p.n, seed)
            case = "degree2-" + case
    return Bisection.from_side(g, set(b.side_x) & set(range(g.n))), case


def solve_subcubic(g: WeightedMultigraph, seed: int | None = 0) -> SolverReport:
    """Bisection of weight at least two thirds of the total on a simple graph of
    maximum degree at most 3."""
    start = time.perf_counter()
    if not g.is_simple():
        raise NotSimple("subcubic solver expects a simple graph")
    if max_degree(g) > 3:
        raise PreconditionViolated(f"maximum degree {max_degree(g)} exceeds 3")
    base = 0 if seed is None else seed
    for attempt in range(SWAP_ATTEMPTS):
        try:
            b, case = _two_thirds_bisection(g, base + 7919 * attempt)
            break
        except (_Retry, TooManyEdges):
            continue
    else:
        raise InitializationExhausted("every attempt hit a failed post-swap check")
    bound = TWO_THIRDS * total_weight(g)
    if abs(len(b.side_x) - len(b.side_y)) > 1 or b.cut_weight < bound:
        raise GuaranteeViolation(f"subcubic solver returned {b.cut_weight} < {bound}")
    return SolverReport(
        input_digest=graph_digest(g),
        method="subcubic",
        guaranteed_bound=bound,
        achieved=b.cut_weight,
        side_x=tuple(sorted(b.side_x)),
        flags={"case": case, "attempts": attempt + 1},
        seed=seed,
        elapsed_ms=(time.perf_counter() - start) * 1000,
        bisection=b,
    )


def solve_chromatic(g: WeightedMultigraph, seed: int | None = None) -> SolverReport:
    start = time.perf_counter()
    b, bound = bisect_via_chromatic_index(g)
    return SolverReport(
        input_digest=graph_digest(g),
        method="chi",
        guaranteed_bound=bound,
        achieved=b.cut_weight,
        side_x=tuple(sorted(b.side_x)),
        flags={"max_degree": max_degree(g)},
        seed=seed,
        elapsed_ms=(time.perf_counter() - start) * 1000,
        bisection=b,
    )
