"""Exhaustive lists of small connected graphs with maximum degree 3.

Every connected graph has a vertex whose removal leaves it connected (a leaf
of a spanning tree), so all connected graphs on ``n + 1`` vertices arise from
those on ``n`` vertices by adding one vertex joined to 1-3 vertices of degree
below 3. Isomorphic copies are merged with a Weisfeiler-Lehman hash bucket
followed by an exact isomorphism test.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import networkx as nx

from .graph import WeightedMultigraph


def _extend(g: nx.Graph, triangle_free: bool):
    n = g.number_of_nodes()
    open_vertices = [v for v in g if g.degree(v) < 3]
    for k in (1, 2, 3):
        for nbrs in combinations(open_vertices, k):
            if triangle_free and any(g.has_edge(a, b) for a, b in combinations(nbrs, 2)):
                continue
            h = g.copy()
            h.add_edges_from((n, v) for v in nbrs)
            yield h


@lru_cache(maxsize=None)
def _level(n: int, triangle_free: bool) -> tuple[nx.Graph, ...]:
    if n == 1:
        g = nx.Graph()
        g.add_node(0)
        return (g,)
    buckets: dict[str, list[nx.Graph]] = {}
    for g in _level(n - 1, triangle_free):
        for h in _extend(g, triangle_free):
            key = nx.weisfeiler_lehman_graph_hash(h, iterations=4)
            bucket = buckets.setdefault(key, [])
            if not any(nx.is_isomorphic(h, other) for other in bucket):
                bucket.append(h)
    graphs = [g for key in sorted(buckets) for g in buckets[key]]
    return tuple(graphs)


def connected_subcubic(n: int, triangle_free: bool = False) -> list[WeightedMultigraph]:
    """One representative per isomorphism class, unit weights."""
    return [WeightedMultigraph.from_edges(n, sorted(g.edges())) for g in _level(n, triangle_free)]


def connected_cubic(n: int) -> list[WeightedMultigraph]:
    return [g for g in connected_subcubic(n) if all(g.degree(v) == 3 for v in range(n))]
