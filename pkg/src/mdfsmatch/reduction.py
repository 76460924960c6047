"""The directed label graph of a matching and the paths that live in it.

Every node ``v`` of the undirected graph gets two labels, ``vA`` and ``vB``,
plus a source ``s`` and a sink ``t``. Labels are dense integers: ``s`` is 0,
``t`` is 1, ``vA`` is ``2v`` and ``vB`` is ``2v + 1``. Matched edges point from
an A label to a B label, unmatched edges from a B label to an A label, and every
free node is wired to the source and the sink. Strongly simple source-to-sink
paths here are exactly the augmenting paths of the matching.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, Matching

SOURCE = 0
SINK = 1
NO_EDGE = -1


def a_label(v: int) -> int:
    return 2 * v


def b_label(v: int) -> int:
    return 2 * v + 1


def node_of(label: int) -> int:
    return label >> 1


def is_a(label: int) -> bool:
    return label >= 2 and not label & 1


def is_b(label: int) -> bool:
    return label >= 2 and bool(label & 1)


def partner(label: int) -> int:
    """The other label of the same node; swaps source and sink."""
    if label < 2:
        return 1 - label
    return label ^ 1


def label_name(label: int) -> str:
    if label == SOURCE:
        return "s"
    if label == SINK:
        return "t"
    return f"{label >> 1}{'B' if label & 1 else 'A'}"


class PathError(ValueError):
    """A directed path cannot be turned into an augmenting path."""


@dataclass(frozen=True)
class DirectedMatchingGraph:
    """Adjacency in compressed rows: successors of ``x`` are
    ``targets[start[x]:start[x + 1]]`` and ``origin`` gives the undirected edge
    index behind each arc, or ``NO_EDGE`` for source and sink arcs."""

    n: int
    start: tuple[int, ...]
    targets: tuple[int, ...]
    origin: tuple[int, ...]
    mate: tuple[int, ...]

    @property
    def label_count(self) -> int:
        return 2 * self.n + 2

    @property
    def arc_count(self) -> int:
        return len(self.targets)

    def successors(self, label: int) -> tuple[int, ...]:
        return self.targets[self.start[label] : self.start[label + 1]]

    def arcs(self):
        for x in range(self.label_count):
            for i in range(self.start[x], self.start[x + 1]):
                yield x, self.targets[i]

    def has_arc(self, x: int, y: int) -> bool:
        return y in self.successors(x)


def build_gm(g: Graph, m: Matching) -> DirectedMatchingGraph:
    return build_gm_from_mate(g, m.mate)


def build_gm_from_mate(g: Graph, mate: Sequence[int], keep=None) -> DirectedMatchingGraph:
    """Build the label graph from a raw mate list.

    ``keep``, if given, is a per-edge-index predicate; unmatched edges failing
    it are left out. Matched edges and source/sink arcs are always present.
    """
    n = g.n
    start = [0] * (2 * n + 3)
    targets: list[int] = []
    origin: list[int] = []
    # source
    for v in range(1, n + 1):
        if mate[v] == 0:
            targets.append(2 * v + 1)
            origin.append(NO_EDGE)
    start[1] = len(targets)
    # sink has no successors
    start[2] = len(targets)
    adjacency = g.adjacency
    for v in range(1, n + 1):
        mv = mate[v]
        # vA
        if mv:
            targets.append(2 * mv + 1)
            origin.append(_matched_index(adjacency[v], mv))
        else:
            targets.append(SINK)
            origin.append(NO_EDGE)
        start[2 * v + 1] = len(targets)
        # vB
        for x, idx in adjacency[v]:
            if x == mv:
                continue
            if keep is not None and not keep(idx):
                continue
            targets.append(2 * x)
            origin.append(idx)
        start[2 * v + 2] = len(targets)
    return DirectedMatchingGraph(n, tuple(start), tuple(targets), tuple(origin), tuple(mate))


def _matched_index(adj, mv: int) -> int:
    for x, idx in adj:
        if x == mv:
            return idx
    raise ValueError("mate table refers to a missing edge")


def is_strongly_simple(g_m: DirectedMatchingGraph, path: Sequence[int]) -> bool:
    """True iff ``path`` is a simple path using no node's two labels together.

    Consecutive labels must be arcs of ``g_m``.
    """
    seen_nodes = set()
    seen_labels = set()
    for i, x in enumerate(path):
        if x in seen_labels:
            return False
        seen_labels.add(x)
        if x >= 2:
            v = x >> 1
            if v in seen_nodes:
                return False
            seen_nodes.add(v)
        if i and not g_m.has_arc(path[i - 1], x):
            return False
    return True


def back_path(path: Sequence[int]) -> list[int]:
    return [partner(x) for x in reversed(path)]


def lift_path(g_m: DirectedMatchingGraph, path: Sequence[int]) -> list[int]:
    """Turn a strongly simple source-to-sink path into the node sequence of
    an augmenting path."""
    if len(path) < 4 or path[0] != SOURCE or path[-1] != SINK:
        raise PathError("path must run from s to t")
    if not is_strongly_simple(g_m, path):
        raise PathError("path is not strongly simple")
    inner = path[1:-1]
    for i, x in enumerate(inner):
        want_b = i % 2 == 0
        if is_b(x) != want_b:
            raise PathError("labels must alternate B, A, B, A, ...")
    return [x >> 1 for x in inner]


def to_dot(g_m: DirectedMatchingGraph) -> str:
    lines = ["digraph G_M {"]
    for x in range(g_m.label_count):
        lines.append(f'  "{label_name(x)}";')
    for x, y in g_m.arcs():
        lines.append(f'  "{label_name(x)}" -> "{label_name(y)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
