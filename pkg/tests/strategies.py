"""Hypothesis strategies for small weighted graphs."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from maxbisect.generators import subcubic_pairs, tf_subcubic_2ecc_pairs
from maxbisect.graph import WeightedMultigraph

weights = st.fractions(min_value=0, max_value=10, max_denominator=12)


@st.composite
def multigraphs(draw, max_n: int = 8, max_m: int = 14, simple: bool = False):
    n = draw(st.integers(1, max_n))
    if n < 2:
        return WeightedMultigraph(n, [])
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    pairs = draw(st.lists(pair, max_size=max_m))
    if simple:
        seen, uniq = set(), []
        for u, v in pairs:
            key = (min(u, v), max(u, v))
            if key not in seen:
                seen.add(key)
                uniq.append(key)
        pairs = uniq
    ws = draw(st.lists(weights, min_size=len(pairs), max_size=len(pairs)))
    return WeightedMultigraph.from_edges(n, [(u, v, w) for (u, v), w in zip(pairs, ws)])


@st.composite
def subcubic_graphs(draw, max_n: int = 14):
    n = draw(st.integers(1, max_n))
    rng = random.Random(draw(st.integers(0, 2**32)))
    pairs = subcubic_pairs(n, rng)
    ws = draw(st.lists(weights, min_size=len(pairs), max_size=len(pairs)))
    return WeightedMultigraph.from_edges(n, [(u, v, w) for (u, v), w in zip(pairs, ws)])


@st.composite
def tf_bridgeless_graphs(draw, max_n: int = 14):
    n = draw(st.integers(4, max_n))
    rng = random.Random(draw(st.integers(0, 2**32)))
    pairs = tf_subcubic_2ecc_pairs(n, rng)
    ws = draw(st.lists(weights, min_size=len(pairs), max_size=len(pairs)))
    return WeightedMultigraph.from_edges(n, [(u, v, w) for (u, v), w in zip(pairs, ws)])


def unit(n: int, pairs) -> WeightedMultigraph:
    return WeightedMultigraph.from_edges(n, [(u, v, Fraction(1)) for u, v in pairs])
