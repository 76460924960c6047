"""Undirected graphs, matchings, DIMACS input and output, and path flips."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class ParseError(ValueError):
    """Base class for DIMACS parse failures. Carries the 1-based line number."""

    kind = "parse"

    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class MalformedHeader(ParseError):
    kind = "malformed-header"


class MalformedEdge(ParseError):
    kind = "malformed-edge"


class NodeOutOfRange(ParseError):
    kind = "node-out-of-range"


class DuplicateEdge(ParseError):
    kind = "duplicate-edge"


class SelfLoop(ParseError):
    kind = "self-loop"


class MatchingError(ValueError):
    """Raised when an edge set is not a matching or a path cannot be flipped."""

    def __init__(self, message: str, node: int | None = None) -> None:
        super().__init__(message)
        self.node = node


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on nodes 1..n.

    Edges keep their input order. ``adjacency[v]`` lists ``(neighbor, edge_index)``
    pairs in that same order, so every solver that walks it is deterministic.
    """

    n: int
    edges: tuple[tuple[int, int, int], ...]
    adjacency: tuple[tuple[tuple[int, int], ...], ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Build a graph, checking ranges, self-loops and parallel edges."""
        if n < 0:
            raise ValueError("node count must be nonnegative")
        norm: list[tuple[int, int, int]] = []
        seen: set[tuple[int, int]] = set()
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n + 1)]
        for e in edges:
            if len(e) == 2:
                u, v, w = e[0], e[1], 1
            else:
                u, v, w = e[0], e[1], e[2]
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u}, {v}) has a node outside 1..{n}")
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if w < 0:
                raise ValueError(f"negative weight on edge ({u}, {v})")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add(key)
            idx = len(norm)
            norm.append((u, v, w))
            adj[u].append((v, idx))
            adj[v].append((u, idx))
        return cls(n, tuple(norm), tuple(tuple(a) for a in adj))

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[tuple[int, int], ...]:
        return self.adjacency[v]

    def edge_index(self, u: int, v: int) -> int | None:
        """Index of edge {u, v}, or None. Linear in the degree of u."""
        for x, idx in self.adjacency[u]:
            if x == v:
                return idx
        return None

    def max_weight(self) -> int:
        return max((w for _, _, w in self.edges), default=0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))


@dataclass(frozen=True)
class Matching:
    """A set of pairwise disjoint edges of a graph, with a mate table.

    ``mate[v]`` is the partner of ``v`` or 0 when ``v`` is free. Index 0 is unused.
    """

    edge_indices: frozenset[int]
    mate: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edge_indices)

    def mate_of(self, v: int) -> int | None:
        x = self.mate[v]
        return x if x else None

    def is_free(self, v: int) -> bool:
        return self.mate[v] == 0

    def pairs(self, g: Graph) -> list[tuple[int, int]]:
        """Matched pairs as (small, large), sorted by the smaller endpoint."""
        out = []
        for idx in self.edge_indices:
            u, v, _ = g.edges[idx]
            out.append((u, v) if u < v else (v, u))
        out.sort()
        return out

    def weight(self, g: Graph) -> int:
        return sum(g.edges[i][2] for i in self.edge_indices)


def empty_matching(g: Graph) -> Matching:
    return Matching(frozenset(), (0,) * (g.n + 1))


def validate_matching(g: Graph, edge_indices: Iterable[int]) -> Matching:
    """Check that ``edge_indices`` is a matching of ``g`` and build its mate table."""
    mate = [0] * (g.n + 1)
    chosen = set()
    for idx in edge_indices:
        if not 0 <= idx < g.m:
            raise MatchingError(f"edge index {idx} out of range")
        if idx in chosen:
            continue
        u, v, _ = g.edges[idx]
        for x in (u, v):
            if mate[x]:
                raise MatchingError(f"node {x} is matched twice", node=x)
        mate[u] = v
        mate[v] = u
        chosen.add(idx)
    return Matching(frozenset(chosen), tuple(mate))


def matching_from_pairs(g: Graph, pairs: Iterable[tuple[int, int]]) -> Matching:
    """Like :func:`validate_matching` but takes node pairs instead of indices."""
    indices = []
    for u, v in pairs:
        if not (1 <= u <= g.n and 1 <= v <= g.n):
            raise MatchingError(f"pair ({u}, {v}) has a node outside 1..{g.n}")
        idx = g.edge_index(u, v)
        if idx is None:
            raise MatchingError(f"({u}, {v}) is not an edge")
        indices.append(idx)
    return validate_matching(g, indices)


def free_nodes(g: Graph, m: Matching) -> list[int]:
    return [v for v in range(1, g.n + 1) if m.mate[v] == 0]


def augment(g: Graph, m: Matching, path: Sequence[int]) -> Matching:
    """Flip an M-augmenting path given as a node sequence v0..vk."""
    k = len(path)
    if k < 2 or k % 2 != 0:
        raise MatchingError("an augmenting path has an even number of nodes, at least 2")
    if len(set(path)) != k:
        raise MatchingError("path is not simple")
    if m.mate[path[0]] or m.mate[path[-1]]:
        raise MatchingError("path endpoints must be free")
    indices = set(m.edge_indices)
    for i in range(k - 1):
        u, v = path[i], path[i + 1]
        idx = g.edge_index(u, v)
        if idx is None:
            raise MatchingError(f"({u}, {v}) is not an edge")
        if i % 2 == 0:
            if idx in indices:
                raise MatchingError(f"edge ({u}, {v}) should be unmatched")
            indices.add(idx)
        else:
            if m.mate[u] != v:
                raise MatchingError(f"edge ({u}, {v}) should be matched")
            indices.discard(idx)
    return validate_matching(g, indices)


def augment_in_place(mate: list[int], path: Sequence[int]) -> None:
    """Flip a path on a raw mate list. No validation; used by the solvers."""
    for i in range(0, len(path), 2):
        u, v = path[i], path[i + 1]
        mate[u] = v
        mate[v] = u


def matching_from_mate(g: Graph, mate: Sequence[int]) -> Matching:
    indices = []
    for u in range(1, g.n + 1):
        v = mate[u]
        if v and u < v:
            idx = g.edge_index(u, v)
            if idx is None:
                raise MatchingError(f"({u}, {v}) is not an edge")
            indices.append(idx)
    return validate_matching(g, indices)


# DIMACS ------------------------------------------------------------------


def parse_dimacs(text: str) -> Graph:
    """Parse DIMACS edge format. Missing weights default to 1."""
    n = -1
    declared_m = 0
    edges: list[tuple[int, int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    adj: list[list[tuple[int, int]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if tag == "p":
            if n >= 0:
                raise MalformedHeader("second header line", lineno)
            if len(parts) != 4 or parts[1] != "edge":
                raise MalformedHeader("expected 'p edge <n> <m>'", lineno)
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise MalformedHeader("node and edge counts must be integers", lineno) from None
            if n < 0 or declared_m < 0:
                raise MalformedHeader("negative count", lineno)
            adj = [[] for _ in range(n + 1)]
        elif tag == "e":
            if n < 0:
                raise MalformedHeader("edge line before header", lineno)
            if len(parts) not in (3, 4):
                raise MalformedEdge("expected 'e <u> <v> [<w>]'", lineno)
            try:
                nums = [int(x) for x in parts[1:]]
            except ValueError:
                raise MalformedEdge("non-integer field", lineno) from None
            u, v = nums[0], nums[1]
            w = nums[2] if len(nums) == 3 else 1
            if not (1 <= u <= n) or not (1 <= v <= n):
                raise NodeOutOfRange(f"node id outside 1..{n}", lineno)
            if u == v:
                raise SelfLoop(f"self-loop at node {u}", lineno)
            if w < 0:
                raise MalformedEdge("negative weight", lineno)
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise DuplicateEdge(f"edge {key} repeats line {seen[key]}", lineno)
            seen[key] = lineno
            idx = len(edges)
            edges.append((u, v, w))
            adj[u].append((v, idx))
            adj[v].append((u, idx))
        else:
            raise MalformedEdge(f"unknown line tag {tag!r}", lineno)
    if n < 0:
        raise MalformedHeader("missing 'p edge' header", 1)
    if len(edges) != declared_m:
        raise MalformedHeader(f"header declares {declared_m} edges, found {len(edges)}", 1)
    return Graph(n, tuple(edges), tuple(tuple(a) for a in adj))


def emit_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines.extend(f"e {u} {v} {w}" for u, v, w in g.edges)
    return "\n".join(lines)


def emit_matching(g: Graph, m: Matching) -> str:
    """``s <cardinality> <weight>`` followed by ``m u v`` lines."""
    lines = [f"s {len(m)} {m.weight(g)}"]
    lines.extend(f"m {u} {v}" for u, v in m.pairs(g))
    return "\n".join(lines) + "\n"


def parse_matching(g: Graph, text: str) -> Matching:
    """Read the matching format back. The ``s`` line is checked if present."""
    pairs = []
    header: tuple[int, int] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        try:
            if parts[0] == "s" and len(parts) == 3:
                header = (int(parts[1]), int(parts[2]))
            elif parts[0] == "m" and len(parts) == 3:
                pairs.append((int(parts[1]), int(parts[2])))
            else:
                raise MatchingError(f"line {lineno}: unrecognized line")
        except ValueError:
            raise MatchingError(f"line {lineno}: non-integer field") from None
    m = matching_from_pairs(g, pairs)
    if header is not None and header != (len(m), m.weight(g)):
        raise MatchingError(
            f"summary line says {header[0]} edges of weight {header[1]}, "
            f"found {len(m)} of weight {m.weight(g)}"
        )
    return m
