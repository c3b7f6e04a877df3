"""Seeded instance generators."""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import PreconditionViolated, RejectionBudgetExceeded
from .graph import WeightedMultigraph, bridges_and_2ecc, is_connected

REJECTION_CAP = 100_000

CLASSES = (
    "cubic-bridgeless",
    "subcubic",
    "tf-subcubic-2ecc",
    "petersen",
    "claw",
    "complete",
    "bipartite-apex",
    "cycle",
)

PETERSEN_EDGES = [
    (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
    (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
    (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
]


def random_weight(rng: random.Random, model: str) -> Fraction:
    if model == "unit":
        return Fraction(1)
    if model == "rational":
        q = rng.randint(1, 100)
        return Fraction(rng.randint(0, 10 * q), q)
    raise ValueError(f"unknown weight model {model!r}")


def _weighted(n: int, pairs, rng: random.Random, model: str) -> WeightedMultigraph:
    return WeightedMultigraph.from_edges(n, [(u, v, random_weight(rng, model)) for u, v in pairs])


def _triangle_free(adj: list[set[int]]) -> bool:
    return all(not (adj[u] & adj[v]) for u in range(len(adj)) for v in adj[u])


def _bridgeless_connected(n: int, pairs) -> bool:
    g = WeightedMultigraph.from_edges(n, pairs)
    return is_connected(g) and not bridges_and_2ecc(g)[0]


def _pairing(n: int, rng: random.Random) -> list[tuple[int, int]] | None:
    """One draw of the configuration model for a cubic graph; None if not simple."""
    points = [v for v in range(n) for _ in range(3)]
    rng.shuffle(points)
    pairs, seen = [], set()
    for i in range(0, len(points), 2):
        u, v = points[i], points[i + 1]
        key = (min(u, v), max(u, v))
        if u == v or key in seen:
            return None
        seen.add(key)
        pairs.append(key)
    return pairs


def cubic_bridgeless_pairs(n: int, rng: random.Random, triangle_free: bool = False):
    if n < 4 or n % 2:
        raise PreconditionViolated("cubic graphs need an even order of at least 4")
    for _ in range(REJECTION_CAP):
        pairs = _pairing(n, rng)
        if pairs is None or not _bridgeless_connected(n, pairs):
            continue
        if triangle_free:
            adj = [set() for _ in range(n)]
            for u, v in pairs:
                adj[u].add(v)
                adj[v].add(u)
            if not _triangle_free(adj):
                continue
        return pairs
    raise RejectionBudgetExceeded(f"no cubic bridgeless graph on {n} vertices")


def subcubic_pairs(n: int, rng: random.Random, density: float | None = None):
    """Random simple graph with maximum degree 3."""
    deg = [0] * n
    pairs, seen = [], set()
    if n < 2:
        return pairs
    attempts = int((density if density is not None else rng.uniform(0.3, 2.0)) * n)
    for _ in range(attempts):
        u, v = rng.sample(range(n), 2)
        key = (min(u, v), max(u, v))
        if deg[u] < 3 and deg[v] < 3 and key not in seen:
            seen.add(key)
            pairs.append(key)
            deg[u] += 1
            deg[v] += 1
    return pairs


def bounded_degree_pairs(n: int, max_deg: int, rng: random.Random):
    """Random simple graph with maximum degree at most ``max_deg``."""
    deg = [0] * n
    pairs, seen = [], set()
    if n < 2:
        return pairs
    for _ in range(rng.randint(0, max_deg * n)):
        u, v = rng.sample(range(n), 2)
        key = (min(u, v), max(u, v))
        if deg[u] < max_deg and deg[v] < max_deg and key not in seen:
            seen.add(key)
            pairs.append(key)
            deg[u] += 1
            deg[v] += 1
    return pairs


def _grow_triangle_free(n: int, base, rng: random.Random, extra: int):
    adj = [set() for _ in range(n)]
    for u, v in base:
        adj[u].add(v)
        adj[v].add(u)
    pairs = list(base)
    for _ in range(extra):
        free = [v for v in range(n) if len(adj[v]) < 3]
        if len(free) < 2:
            break
        u, v = rng.sample(free, 2)
        if v in adj[u] or adj[u] & adj[v]:
            continue
        adj[u].add(v)
        adj[v].add(u)
        pairs.append((min(u, v), max(u, v)))
    return pairs


def tf_subcubic_2ecc_pairs(n: int, rng: random.Random):
    """2-edge-connected triangle-free graph with maximum degree 3.

    Three recipes are mixed so both Hamiltonian and non-Hamiltonian shapes
    show up: a random Hamiltonian cycle with chords, a cubic triangle-free
    pairing-model graph (even ``n``), and free random growth with rejection.
    """
    if n < 4:
        raise PreconditionViolated("a 2-edge-connected triangle-free graph needs at least 4 vertices")
    recipe = rng.randrange(3)
    if recipe == 1 and n % 2 == 0 and n >= 6:
        return cubic_bridgeless_pairs(n, rng, triangle_free=True)
    if recipe == 0:
        order = list(range(n))
        rng.shuffle(order)
        base = [(min(order[i], order[(i + 1) % n]), max(order[i], order[(i + 1) % n])) for i in range(n)]
        return _grow_triangle_free(n, base, rng, rng.randint(0, 2 * n))
    for _ in range(REJECTION_CAP):
        pairs = _grow_triangle_free(n, [], rng, rng.randint(n, 4 * n))
        if _bridgeless_connected(n, pairs):
            return pairs
    raise RejectionBudgetExceeded(f"no 2-edge-connected triangle-free graph on {n} vertices")


def bipartite_apex_pairs(t: int):
    """K_{2t,2t} plus a vertex joined to all of one side and one vertex of the other."""
    side_a = list(range(2 * t))
    side_b = list(range(2 * t, 4 * t))
    v = 4 * t
    pairs = [(a, b) for a in side_a for b in side_b]
    pairs += [(b, v) for b in side_b]
    pairs.append((side_a[0], v))
    return 4 * t + 1, pairs


def generate(cls: str, n: int, seed: int = 0, weights: str = "unit") -> WeightedMultigraph:
    """Instance of class ``cls``. For ``complete``, ``cycle`` and ``bipartite-apex``,
    ``n`` is the class parameter (k, l and t respectively)."""
    rng = random.Random(seed)
    if cls == "cubic-bridgeless":
        return _weighted(n, cubic_bridgeless_pairs(n, rng), rng, weights)
    if cls == "subcubic":
        return _weighted(n, subcubic_pairs(n, rng), rng, weights)
    if cls == "tf-subcubic-2ecc":
        return _weighted(n, tf_subcubic_2ecc_pairs(n, rng), rng, weights)
    if cls == "petersen":
        return _weighted(10, PETERSEN_EDGES, rng, weights)
    if cls == "claw":
        return _weighted(4, [(0, 1), (0, 2), (0, 3)], rng, weights)
    if cls == "complete":
        return _weighted(n, [(u, v) for u in range(n) for v in range(u + 1, n)], rng, weights)
    if cls == "cycle":
        if n < 3:
            raise PreconditionViolated("cycles need at least 3 vertices")
        return _weighted(n, [(i, (i + 1) % n) for i in range(n)], rng, weights)
    if cls == "bipartite-apex":
        size, pairs = bipartite_apex_pairs(n)
        return _weighted(size, pairs, rng, weights)
    raise ValueError(f"unknown graph class {cls!r}")
