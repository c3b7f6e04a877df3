"""Weighted multigraphs with exact rational weights and the structural
algorithms the solvers share."""

from __future__ import annotations

import hashlib
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import GraphFormatError, MalformedStructure, NotPerfect, PreconditionViolated

Weight = Fraction


def parse_weight(token: str) -> Fraction:
    """Parse ``3``, ``0.25``, ``1e-2`` or ``7/4`` into an exact rational."""
    try:
        value = Fraction(token.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise GraphFormatError(f"bad weight {token!r}") from exc
    if value < 0:
        raise GraphFormatError(f"negative weight {token!r}")
    return value


def format_rational(value: Fraction) -> str:
    """Canonical lowest-terms ``p/q`` string (``q`` may be 1)."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def format_weight(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    weight: Fraction

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u

    @property
    def ends(self) -> tuple[int, int]:
        return (self.u, self.v)


class WeightedMultigraph:
    """Immutable multigraph on vertices ``0..n-1``.

    Parallel edges and zero weights are allowed; self-loops are not. Every
    edge carries an id that survives the derived-graph helpers
    (:meth:`with_edges`, :meth:`without_edges`, :meth:`with_vertices`).
    """

    __slots__ = ("n", "edges", "_by_id", "_inc", "_adj")

    def __init__(self, n: int, edges: Iterable[Edge]):
        if n < 0:
            raise PreconditionViolated("negative vertex count")
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(sorted(edges, key=lambda e: e.id))
        self._by_id: dict[int, Edge] = {}
        self._inc: list[list[int]] = [[] for _ in range(n)]
        self._adj: list[dict[int, list[int]]] = [{} for _ in range(n)]
        for e in self.edges:
            if e.id in self._by_id:
                raise PreconditionViolated(f"duplicate edge id {e.id}")
            if not (0 <= e.u < n and 0 <= e.v < n):
                raise PreconditionViolated(f"edge {e.id} has an endpoint outside 0..{n - 1}")
            if e.u == e.v:
                raise PreconditionViolated(f"edge {e.id} is a self-loop")
            if not isinstance(e.weight, Fraction):
                e = Edge(e.id, e.u, e.v, Fraction(e.weight))
            if e.weight < 0:
                raise PreconditionViolated(f"edge {e.id} has negative weight")
            self._by_id[e.id] = e
            self._inc[e.u].append(e.id)
            self._inc[e.v].append(e.id)
            self._adj[e.u].setdefault(e.v, []).append(e.id)
            self._adj[e.v].setdefault(e.u, []).append(e.id)
        self.edges = tuple(self._by_id[e.id] for e in self.edges)

    @classmethod
    def from_edges(cls, n: int, triples: Iterable[Sequence]) -> WeightedMultigraph:
        """Build from ``(u, v[, w])`` tuples; ids are assigned 0, 1, 2, ..."""
        edges = []
        for i, t in enumerate(triples):
            w = Fraction(t[2]) if len(t) > 2 else Fraction(1)
            edges.append(Edge(i, int(t[0]), int(t[1]), w))
        return cls(n, edges)

    # queries

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge(self, eid: int) -> Edge:
        return self._by_id[eid]

    def has_edge_id(self, eid: int) -> bool:
        return eid in self._by_id

    def incident(self, v: int) -> list[int]:
        return list(self._inc[v])

    def degree(self, v: int) -> int:
        return len(self._inc[v])

    def neighbors(self, v: int) -> list[int]:
        return sorted(self._adj[v])

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges_between(self, u: int, v: int) -> list[int]:
        return list(self._adj[u].get(v, ()))

    def multiplicity(self, u: int, v: int) -> int:
        return len(self._adj[u].get(v, ()))

    def is_simple(self) -> bool:
        return all(len(ids) == 1 for adj in self._adj for ids in adj.values())

    def next_edge_id(self) -> int:
        return self.edges[-1].id + 1 if self.edges else 0

    def induced_edges(self, vertices: Iterable[int]) -> list[int]:
        vs = set(vertices)
        return [e.id for e in self.edges if e.u in vs and e.v in vs]

    def weight_of(self, edge_ids: Iterable[int]) -> Fraction:
        return sum((self._by_id[i].weight for i in edge_ids), Fraction(0))

    def cut_weight(self, side: Iterable[int]) -> Fraction:
        s = set(side)
        return sum((e.weight for e in self.edges if (e.u in s) != (e.v in s)), Fraction(0))

    # derived graphs

    def with_vertices(self, k: int) -> WeightedMultigraph:
        return WeightedMultigraph(self.n + k, self.edges)

    def with_edges(self, triples: Iterable[Sequence]) -> tuple[WeightedMultigraph, list[int]]:
        """Add ``(u, v, w)`` edges with fresh ids; returns the new graph and the ids."""
        nid = self.next_edge_id()
        new = []
        for t in triples:
            new.append(Edge(nid, int(t[0]), int(t[1]), Fraction(t[2])))
            nid += 1
        return WeightedMultigraph(self.n, self.edges + tuple(new)), [e.id for e in new]

    def without_edges(self, edge_ids: Iterable[int]) -> WeightedMultigraph:
        drop = set(edge_ids)
        return WeightedMultigraph(self.n, (e for e in self.edges if e.id not in drop))

    def induced_subgraph(self, vertices: Sequence[int]) -> tuple[WeightedMultigraph, list[int]]:
        """Relabel ``vertices`` to ``0..k-1`` (in the given order), keeping edge ids."""
        index = {v: i for i, v in enumerate(vertices)}
        sub = [
            Edge(e.id, index[e.u], index[e.v], e.weight)
            for e in self.edges
            if e.u in index and e.v in index
        ]
        return WeightedMultigraph(len(vertices), sub), list(vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedMultigraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"WeightedMultigraph(n={self.n}, m={self.m}, w={total_weight(self)})"


def total_weight(g: WeightedMultigraph) -> Fraction:
    return sum((e.weight for e in g.edges), Fraction(0))


def max_degree(g: WeightedMultigraph) -> int:
    return max((g.degree(v) for v in range(g.n)), default=0)


def degree_set(g: WeightedMultigraph, d: int) -> list[int]:
    """Vertices of degree exactly ``d`` (parallel edges counted)."""
    return [v for v in range(g.n) if g.degree(v) == d]


def is_triangle_free(g: WeightedMultigraph) -> bool:
    for e in g.edges:
        small, big = (e.u, e.v) if len(g._adj[e.u]) <= len(g._adj[e.v]) else (e.v, e.u)
        for w in g._adj[small]:
            if w != big and g.adjacent(w, big):
                return False
    return True


def connected_components(g: WeightedMultigraph, skip: Iterable[int] = ()) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest vertex."""
    banned = set(skip)
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], [s]
        while stack:
            v = stack.pop()
            for eid in g._inc[v]:
                if eid in banned:
                    continue
                w = g._by_id[eid].other(v)
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: WeightedMultigraph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def bridges_and_2ecc(g: WeightedMultigraph) -> tuple[frozenset[int], list[list[int]]]:
    """Bridges (edge ids) and 2-edge-connected components (sorted vertex lists).

    Iterative Tarjan lowpoint search. The DFS skips only the tree edge it
    arrived by (by id), so a parallel copy correctly counts as a back edge.
    """
    disc = [-1] * g.n
    low = [0] * g.n
    bridges: set[int] = set()
    clock = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(g._inc[root]))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for eid in it:
                if eid == via:
                    continue
                w = g._by_id[eid].other(v)
                if disc[w] == -1:
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, eid, iter(g._inc[w])))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    bridges.add(via)
    return frozenset(bridges), connected_components(g, skip=bridges)


def has_bridge(g: WeightedMultigraph) -> bool:
    return bool(bridges_and_2ecc(g)[0])


# matchings


def check_matching(g: WeightedMultigraph, ids: Iterable[int], perfect: bool = False) -> frozenset[int]:
    """Validate a matching and return it as a frozenset of edge ids."""
    ids = frozenset(ids)
    used: set[int] = set()
    for eid in ids:
        if not g.has_edge_id(eid):
            raise PreconditionViolated(f"matching edge {eid} not in graph")
        e = g.edge(eid)
        if e.u in used or e.v in used:
            raise PreconditionViolated(f"matching edges share a vertex at edge {eid}")
        used.update(e.ends)
    if perfect and len(used) != g.n:
        raise NotPerfect(f"matching covers {len(used)} of {g.n} vertices")
    return ids


def is_matching(g: WeightedMultigraph, ids: Iterable[int]) -> bool:
    try:
        check_matching(g, ids)
    except PreconditionViolated:
        return False
    return True


def matched_vertex_map(g: WeightedMultigraph, m: Iterable[int]) -> dict[int, int]:
    """vertex -> id of the matching edge covering it."""
    out = {}
    for eid in m:
        e = g.edge(eid)
        out[e.u] = eid
        out[e.v] = eid
    return out


# cycle/path decomposition of g - M


@dataclass(frozen=True)
class CyclePathStructure:
    """Components of ``g - M``.

    ``cycles[i]`` lists vertices in cyclic order and ``cycle_edges[i][j]`` is
    the edge joining ``cycles[i][j]`` to ``cycles[i][j+1]`` (indices mod the
    length). A cycle of length 2 is a digon made of two parallel edges.
    """

    cycles: tuple[tuple[int, ...], ...]
    cycle_edges: tuple[tuple[int, ...], ...]
    path: tuple[int, ...] | None
    path_edges: tuple[int, ...] | None
    isolated: tuple[int, ...]

    def oriented_path(self, g: WeightedMultigraph, first: int) -> CyclePathStructure:
        """Same structure with the path reversed if needed so it starts at ``first``."""
        if self.path is None:
            raise MalformedStructure("no path component")
        if self.path[0] == first:
            return self
        if self.path[-1] != first:
            raise MalformedStructure(f"vertex {first} is not a path endpoint")
        return CyclePathStructure(
            self.cycles, self.cycle_edges, self.path[::-1], self.path_edges[::-1], self.isolated
        )


def cycle_path_decomposition(g: WeightedMultigraph, m: Iterable[int]) -> CyclePathStructure:
    rest = g.without_edges(m)
    for v in range(rest.n):
        if rest.degree(v) > 2:
            raise MalformedStructure(f"vertex {v} has degree {rest.degree(v)} in g - M")
    cycles, cycle_edges, paths, isolated = [], [], [], []
    for comp in connected_components(rest):
        if len(comp) == 1:
            isolated.append(comp[0])
            continue
        ends = [v for v in comp if rest.degree(v) == 1]
        start = ends[0] if ends else comp[0]
        order, eids = [start], []
        prev_edge = None
        v = start
        while True:
            nxt = [eid for eid in rest._inc[v] if eid != prev_edge]
            if not nxt:
                break
            if ends or len(order) > 1:
                eid = nxt[0]
            else:
                # cycle start: head toward the smaller-id neighbour (digons: lowest edge id)
                eid = min(nxt, key=lambda i: (rest.edge(i).other(v), i))
            w = rest.edge(eid).other(v)
            eids.append(eid)
            if w == start:
                break
            order.append(w)
            prev_edge, v = eid, w
        if ends:
            paths.append((tuple(order), tuple(eids)))
        else:
            cycles.append(tuple(order))
            cycle_edges.append(tuple(eids))
    if len(paths) > 1:
        raise MalformedStructure(f"g - M has {len(paths)} path components")
    path, path_edges = paths[0] if paths else (None, None)
    return CyclePathStructure(tuple(cycles), tuple(cycle_edges), path, path_edges, tuple(isolated))


# contraction


@dataclass(frozen=True)
class ContractedGraph:
    """``g / M``: vertex ``i`` stands for the matched pair ``pairs[i]``.

    ``sources[eid]`` holds the ids of the cross edges of ``g`` that the
    contracted edge ``eid`` aggregates; its weight is their sum.
    """

    graph: WeightedMultigraph
    pairs: tuple[tuple[int, int], ...]
    pair_edges: tuple[int, ...]
    vertex_of: dict[int, int] = field(hash=False)
    sources: dict[int, tuple[int, ...]] = field(hash=False)


def contract_matching(g: WeightedMultigraph, m: Iterable[int]) -> ContractedGraph:
    m = check_matching(g, m, perfect=True)
    order = sorted(m)
    pairs = tuple(tuple(sorted(g.edge(eid).ends)) for eid in order)
    vertex_of = {}
    for i, (a, b) in enumerate(pairs):
        vertex_of[a] = vertex_of[b] = i
    grouped: dict[tuple[int, int], list[int]] = {}
    for e in g.edges:
        i, j = vertex_of[e.u], vertex_of[e.v]
        if i == j:
            if e.id not in m:
                # a parallel copy of a matching edge stays inside the pair
                raise PreconditionViolated("contracting a matching with a parallel copy")
            continue
        grouped.setdefault((min(i, j), max(i, j)), []).append(e.id)
    edges, sources = [], {}
    for eid, key in enumerate(sorted(grouped)):
        ids = tuple(grouped[key])
        edges.append(Edge(eid, key[0], key[1], g.weight_of(ids)))
        sources[eid] = ids
    return ContractedGraph(
        WeightedMultigraph(len(pairs), edges), pairs, tuple(order), vertex_of, sources
    )


# text format


def format_graph(g: WeightedMultigraph, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" if c else "c" for c in comments]
    lines.append(f"p bisect {g.n} {g.m}")
    for e in g.edges:
        lines.append(f"e {e.u + 1} {e.v + 1} {format_weight(e.weight)}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> WeightedMultigraph:
    n = m = None
    triples = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line == "c" or line.startswith("c "):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None or len(parts) != 4 or parts[1] != "bisect":
                raise GraphFormatError(f"line {lineno}: bad header {raw!r}")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise GraphFormatError(f"line {lineno}: bad header {raw!r}") from exc
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError(f"line {lineno}: edge before header")
            if len(parts) != 4:
                raise GraphFormatError(f"line {lineno}: expected 'e u v w'")
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError as exc:
                raise GraphFormatError(f"line {lineno}: bad endpoint") from exc
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"line {lineno}: endpoint out of range")
            if u == v:
                raise GraphFormatError(f"line {lineno}: self-loop")
            triples.append((u, v, parse_weight(parts[3])))
        else:
            raise GraphFormatError(f"line {lineno}: unknown line type {parts[0]!r}")
    if n is None:
        raise GraphFormatError("missing 'p bisect' header")
    if len(triples) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(triples)}")
    return WeightedMultigraph.from_edges(n, triples)


def read_graph(path: str | Path) -> WeightedMultigraph:
    return parse_graph(Path(path).read_text())


def write_graph(g: WeightedMultigraph, path: str | Path, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(format_graph(g, comments))


def graph_digest(g: WeightedMultigraph) -> str:
    return "sha256:" + hashlib.sha256(format_graph(g).encode()).hexdigest()
