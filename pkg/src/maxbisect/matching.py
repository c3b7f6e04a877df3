"""Matchings and edge colourings.

* :func:`max_weight_matching`: exact branch-and-bound over vertices, meant for
  graphs with a few dozen vertices.
* :func:`vizing_color`: Misra-Gries fan recolouring, at most ``Delta + 1`` colours.
* :func:`forced_perfect_matching`: a perfect matching through a chosen edge of
  a bridgeless cubic multigraph. Doubled edges are replaced by a two-vertex
  gadget so the search runs on a simple graph.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from .errors import ImproperColoring, NotSimple, PreconditionViolated
from .graph import WeightedMultigraph, check_matching, max_degree

Matching = frozenset


# maximum weight matching


def max_weight_matching(g: WeightedMultigraph) -> frozenset[int]:
    """Exact maximum-weight matching (edge ids).

    Only the heaviest edge between each pair of vertices matters and zero
    weights never help, so the search runs on the reduced simple graph. At
    each node the lowest undecided vertex is either left unmatched or matched
    to one of its free neighbours. The bound is the current weight plus half
    of the heaviest free edge at every undecided vertex.
    """
    best_edge: dict[tuple[int, int], int] = {}
    for e in g.edges:
        if e.weight <= 0:
            continue
        key = (min(e.ends), max(e.ends))
        cur = best_edge.get(key)
        if cur is None or e.weight > g.edge(cur).weight:
            best_edge[key] = e.id
    adj: list[list[tuple[int, Fraction, int]]] = [[] for _ in range(g.n)]
    for (u, v), eid in best_edge.items():
        w = g.edge(eid).weight
        adj[u].append((v, w, eid))
        adj[v].append((u, w, eid))
    for lst in adj:
        lst.sort(key=lambda t: (-t[1], t[2]))

    active = [v for v in range(g.n) if adj[v]]
    matched = [False] * g.n
    best_w = Fraction(0)
    best_set: list[int] = []
    chosen: list[int] = []

    def bound(pos: int) -> Fraction:
        total = Fraction(0)
        for v in active[pos:]:
            if matched[v]:
                continue
            for u, w, _ in adj[v]:
                if not matched[u]:
                    total += w
                    break
        return total / 2

    def search(pos: int, weight: Fraction) -> None:
        nonlocal best_w, best_set
        while pos < len(active) and matched[active[pos]]:
            pos += 1
        if weight > best_w:
            best_w, best_set = weight, list(chosen)
        if pos == len(active) or weight + bound(pos) <= best_w:
            return
        v = active[pos]
        matched[v] = True
        for u, w, eid in adj[v]:
            if matched[u]:
                continue
            matched[u] = True
            chosen.append(eid)
            search(pos + 1, weight + w)
            chosen.pop()
            matched[u] = False
        search(pos + 1, weight)
        matched[v] = False

    search(0, Fraction(0))
    return frozenset(best_set)


def max_cardinality_matching_size(g: WeightedMultigraph) -> int:
    simple = nx.Graph()
    simple.add_nodes_from(range(g.n))
    simple.add_edges_from(e.ends for e in g.edges)
    return len(nx.max_weight_matching(simple, maxcardinality=True))


# perfect matchings


def _lowest_edge(g: WeightedMultigraph, u: int, v: int) -> int:
    return min(g.edges_between(u, v))


def _nx_perfect(graph: nx.Graph) -> set[tuple] | None:
    if graph.number_of_nodes() % 2:
        return None
    if graph.number_of_nodes() == 0:
        return set()
    mate = nx.max_weight_matching(graph, maxcardinality=True)
    if 2 * len(mate) != graph.number_of_nodes():
        return None
    return mate


def perfect_matching(g: WeightedMultigraph) -> frozenset[int] | None:
    """A perfect matching (edge ids), or ``None`` if there is none."""
    simple = nx.Graph()
    simple.add_nodes_from(range(g.n))
    simple.add_edges_from(e.ends for e in g.edges)
    mate = _nx_perfect(simple)
    if mate is None:
        return None
    return frozenset(_lowest_edge(g, u, v) for u, v in mate)


def forced_perfect_matching(g: WeightedMultigraph, e: int) -> frozenset[int]:
    """Perfect matching of the cubic multigraph ``g`` containing edge ``e``."""
    for v in range(g.n):
        if g.degree(v) != 3:
            raise PreconditionViolated(f"vertex {v} has degree {g.degree(v)}, expected 3")
    if not g.has_edge_id(e):
        raise PreconditionViolated(f"edge {e} not in graph")

    gadget = nx.Graph()
    gadget.add_nodes_from(range(g.n))
    doubled: dict[tuple[int, int], list[int]] = {}
    tripled: dict[tuple[int, int], list[int]] = {}
    for u in range(g.n):
        for v in g.neighbors(u):
            if v < u:
                continue
            ids = g.edges_between(u, v)
            if len(ids) == 1:
                gadget.add_edge(u, v)
            elif len(ids) == 2:
                doubled[(u, v)] = sorted(ids)
                a, b = ("v", u, v), ("w", u, v)
                gadget.add_edges_from([(u, a), (u, b), (v, a), (v, b), (a, b)])
            else:
                tripled[(u, v)] = sorted(ids)
                gadget.add_nodes_from([u, v])

    forced = g.edge(e)
    fu, fv = min(forced.ends), max(forced.ends)
    mult = g.multiplicity(fu, fv)
    if mult == 1:
        image = (fu, fv)
    elif mult == 2:
        image = (fu, ("v", fu, fv))
    else:
        image = (fu, fv)

    rest = gadget.copy()
    rest.remove_nodes_from(image)
    for (u, v) in tripled:
        # a tripled pair is a whole component; it is matched by one of its copies
        if u in rest:
            rest.remove_nodes_from([u, v])
    mate = _nx_perfect(rest)
    if mate is None:
        raise PreconditionViolated(f"no perfect matching contains edge {e}")
    mate = {tuple(p) for p in mate} | {image}

    def has(a, b) -> bool:
        return (a, b) in mate or (b, a) in mate

    result = set()
    for (u, v), ids in tripled.items():
        result.add(e if e in ids else ids[0])
    for (u, v), ids in doubled.items():
        a, b = ("v", u, v), ("w", u, v)
        if (has(u, a) and has(v, b)) or (has(u, b) and has(v, a)):
            result.add(e if e in ids else ids[0])
    for p, q in mate:
        if isinstance(p, int) and isinstance(q, int) and g.multiplicity(p, q) == 1:
            result.add(_lowest_edge(g, p, q))
    result = check_matching(g, result, perfect=True)
    if e not in result:
        raise PreconditionViolated(f"matching lost the forced edge {e}")
    return result


# edge colouring


@dataclass(frozen=True)
class EdgeColoring:
    colors: dict[int, int]
    count: int

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for eid, c in sorted(self.colors.items()):
            out.setdefault(c, []).append(eid)
        return out


def vizing_color(g: WeightedMultigraph) -> EdgeColoring:
    """Proper edge colouring of a simple graph with at most ``Delta + 1`` colours.

    Edges are coloured in ascending id order. Fans grow greedily, always
    following the smallest colour free at the current fan tip.
    """
    if not g.is_simple():
        raise NotSimple("edge colouring needs a simple graph")
    palette = max_degree(g) + 1
    at: list[dict[int, int]] = [dict() for _ in range(g.n)]
    color: dict[int, int] = {}

    def first_free(x: int) -> int:
        for c in range(palette):
            if c not in at[x]:
                return c
        raise AssertionError("no free colour")  # pragma: no cover

    def assign(eid: int, c: int) -> None:
        edge = g.edge(eid)
        color[eid] = c
        at[edge.u][c] = eid
        at[edge.v][c] = eid

    def clear(eid: int) -> None:
        edge = g.edge(eid)
        c = color.pop(eid)
        del at[edge.u][c]
        del at[edge.v][c]

    for e in g.edges:
        u = e.u
        fan, fan_edges = [e.v], [e.id]
        in_fan = {e.v}
        while True:
            tip = fan[-1]
            step = None
            for c in range(palette):
                if c in at[tip] or c not in at[u]:
                    continue
                eid = at[u][c]
                w = g.edge(eid).other(u)
                if w not in in_fan:
                    step = (w, eid)
                    break
            if step is None:
                break
            fan.append(step[0])
            fan_edges.append(step[1])
            in_fan.add(step[0])

        c = first_free(u)
        d = first_free(fan[-1])
        if c != d:
            path, x, want = [], u, d
            while want in at[x]:
                eid = at[x][want]
                path.append(eid)
                x = g.edge(eid).other(x)
                want = c if want == d else d
            old = {eid: color[eid] for eid in path}
            for eid in path:
                clear(eid)
            for eid in path:
                assign(eid, c if old[eid] == d else d)

        stop = None
        for i, f in enumerate(fan):
            if i > 0 and color.get(fan_edges[i]) not in _free_set(at, fan[i - 1], palette):
                break
            if d not in at[f]:
                stop = i
                break
        if stop is None:  # pragma: no cover - excluded by the fan lemma
            raise AssertionError("fan rotation failed")
        shifted = [color[fan_edges[j + 1]] for j in range(stop)]
        for j in range(1, stop + 1):
            clear(fan_edges[j])
        for j in range(stop):
            assign(fan_edges[j], shifted[j])
        assign(fan_edges[stop], d)

    return EdgeColoring(dict(color), len(set(color.values())))


def _free_set(at: list[dict[int, int]], x: int, palette: int) -> set[int]:
    return {c for c in range(palette) if c not in at[x]}


def check_coloring(g: WeightedMultigraph, coloring: EdgeColoring) -> None:
    seen: dict[tuple[int, int], int] = {}
    for e in g.edges:
        if e.id not in coloring.colors:
            raise ImproperColoring(f"edge {e.id} is uncoloured")
        c = coloring.colors[e.id]
        for v in e.ends:
            if (v, c) in seen:
                raise ImproperColoring(f"edges {seen[(v, c)]} and {e.id} share colour {c} at {v}")
            seen[(v, c)] = e.id


def heaviest_color_class(g: WeightedMultigraph, coloring: EdgeColoring) -> frozenset[int]:
    check_coloring(g, coloring)
    classes = coloring.classes()
    if not classes:
        return frozenset()
    best = max(sorted(classes), key=lambda c: (g.weight_of(classes[c]), -c))
    return frozenset(classes[best])


def matching_from_pairs(g: WeightedMultigraph, pairs: Iterable[tuple[int, int]]) -> frozenset[int]:
    return check_matching(g, (_lowest_edge(g, u, v) for u, v in pairs))
