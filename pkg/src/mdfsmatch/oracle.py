"""Brute-force reference solvers and a seeded instance generator.

Nothing here shares search logic with the solvers. The matching oracles
enumerate matchings directly; the path oracle runs a breadth-first search over
(label, set of used nodes) states, which is exact for strong simplicity.
"""

from __future__ import annotations

import random
from collections import deque

from .graph import Graph, Matching, validate_matching
from .reduction import SINK, SOURCE, DirectedMatchingGraph

MAX_CARDINALITY_NODES = 14
MAX_WEIGHT_NODES = 12
MAX_PATH_LABELS = 30


class OracleGuardError(ValueError):
    """The instance is too large for exhaustive search."""


def _enumerate_best(g: Graph, score) -> tuple[int, list[int]]:
    # Branch on the lowest undecided node: leave it free or match it to a
    # later undecided neighbor. Each matching is visited exactly once.
    n = g.n
    used = [False] * (n + 1)
    chosen: list[int] = []
    best = [-1, []]

    def rec(v: int, value: int) -> None:
        while v <= n and used[v]:
            v += 1
        if v > n:
            if value > best[0]:
                best[0] = value
                best[1] = list(chosen)
            return
        used[v] = True
        for x, idx in g.adjacency[v]:
            if not used[x]:
                used[x] = True
                chosen.append(idx)
                rec(v + 1, value + score(idx))
                chosen.pop()
                used[x] = False
        rec(v + 1, value)
        used[v] = False

    rec(1, 0)
    return best[0], best[1]


def brute_max_cardinality(g: Graph) -> Matching:
    if g.n > MAX_CARDINALITY_NODES:
        raise OracleGuardError(f"brute_max_cardinality limited to n <= {MAX_CARDINALITY_NODES}")
    _, idx = _enumerate_best(g, lambda i: 1)
    return validate_matching(g, idx)


def brute_max_weight(g: Graph) -> tuple[Matching, int]:
    if g.n > MAX_WEIGHT_NODES:
        raise OracleGuardError(f"brute_max_weight limited to n <= {MAX_WEIGHT_NODES}")
    value, idx = _enumerate_best(g, lambda i: g.edges[i][2])
    return validate_matching(g, idx), value


def all_matchings(g: Graph):
    """Yield every matching of ``g`` (including the empty one) as index lists."""
    n = g.n
    used = [False] * (n + 1)
    chosen: list[int] = []

    def rec(v: int):
        while v <= n and used[v]:
            v += 1
        if v > n:
            yield list(chosen)
            return
        used[v] = True
        for x, idx in g.adjacency[v]:
            if not used[x]:
                used[x] = True
                chosen.append(idx)
                yield from rec(v + 1)
                chosen.pop()
                used[x] = False
        yield from rec(v + 1)
        used[v] = False

    yield from rec(1)


def _node_bit(label: int) -> int:
    return 1 << (label >> 1) if label >= 2 else 0


def strongly_simple_distances(g_m: DirectedMatchingGraph, source: int = SOURCE) -> dict[int, tuple[int, list[int]]]:
    """Shortest strongly simple path from ``source`` to every reachable label.

    Returns ``{label: (length, path)}``. States are (label, mask of graph nodes
    already touched by either label); breadth-first order makes the first visit
    of a label a shortest one.
    """
    if g_m.label_count > MAX_PATH_LABELS:
        raise OracleGuardError(f"path oracle limited to {MAX_PATH_LABELS} labels")
    start = (source, _node_bit(source))
    parent = {start: None}
    best: dict[int, tuple[int, list[int]]] = {}
    queue = deque([(start, 0)])
    while queue:
        state, dist = queue.popleft()
        label, mask = state
        if label not in best:
            path = []
            cur = state
            while cur is not None:
                path.append(cur[0])
                cur = parent[cur]
            path.reverse()
            best[label] = (dist, path)
        for nxt in g_m.successors(label):
            bit = _node_bit(nxt)
            if nxt == source or (bit and mask & bit):
                continue
            ns = (nxt, mask | bit)
            if ns not in parent:
                parent[ns] = state
                queue.append((ns, dist + 1))
    return best


def brute_st_strongly_simple(
    g_m: DirectedMatchingGraph, source: int = SOURCE, target: int = SINK
) -> tuple[list[int], int] | None:
    """Shortest strongly simple path from ``source`` to ``target``, or None."""
    found = strongly_simple_distances(g_m, source).get(target)
    if found is None:
        return None
    length, path = found
    return path, length


def gen_random(n: int, m: int, seed: int, max_weight: int = 1) -> Graph:
    """A simple graph with ``n`` nodes and ``m`` distinct random edges.

    Deterministic for a given seed. Weights are uniform in 1..max_weight.
    """
    total = n * (n - 1) // 2
    if m < 0 or m > total:
        raise ValueError(f"cannot place {m} edges on {n} nodes (at most {total})")
    if max_weight < 1:
        raise ValueError("max_weight must be at least 1")
    rng = random.Random(seed)
    pairs: list[tuple[int, int]] = []
    if 2 * m > total:
        every = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
        pairs = rng.sample(every, m)
    else:
        seen: set[tuple[int, int]] = set()
        while len(pairs) < m:
            u = rng.randint(1, n)
            v = rng.randint(1, n)
            if u == v:
                continue
            key = (u, v) if u < v else (v, u)
            if key in seen:
                continue
            seen.add(key)
            pairs.append(key)
    edges = [(u, v, rng.randint(1, max_weight)) for u, v in pairs]
    return Graph.from_edges(n, edges)
