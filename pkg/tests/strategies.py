"""Hypothesis strategies shared by the module tests."""

from __future__ import annotations

from hypothesis import strategies as st

from mdfsmatch.graph import Graph, validate_matching


@st.composite
def graphs(draw, min_nodes=1, max_nodes=8, max_weight=1):
    n = draw(st.integers(min_nodes, max_nodes))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    weights = draw(st.lists(st.integers(1, max_weight), min_size=len(chosen), max_size=len(chosen)))
    return Graph.from_edges(n, [(u, v, w) for (u, v), w in zip(chosen, weights)])


@st.composite
def graphs_with_matching(draw, min_nodes=1, max_nodes=8, max_weight=1):
    g = draw(graphs(min_nodes, max_nodes, max_weight))
    order = draw(st.permutations(range(g.m))) if g.m else []
    keep = draw(st.lists(st.booleans(), min_size=len(order), max_size=len(order)))
    used, chosen = set(), []
    for idx, k in zip(order, keep):
        u, v, _ = g.edges[idx]
        if k and u not in used and v not in used:
            used |= {u, v}
            chosen.append(idx)
    return g, validate_matching(g, chosen)
