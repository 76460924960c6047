"""Maximum-weight matching by the primal-dual method with doubled duals.

Node weights are stored as ``pihat = 2*pi`` and blossom weights as
``muhat = 2*mu``, so every quantity stays an integer. The reduced cost of an
edge is ``rhat = pihat(u) + pihat(v) + sum of muhat over blossoms holding both
ends - 2*w``; feasibility means ``rhat >= 0`` everywhere.

Each round first runs the strongly simple path search over the tight edges
(the equality subgraph). An arc entering a live blossom through an unmatched
edge jumps straight to the blossom's base, because a path that enters and
leaves a blossom through unmatched edges would break its matched-edge count.
If a path turns up it is augmented. Otherwise the tight subgraph is labelled
outer/inner with blossom shrinking, and one dual extension step moves the
duals by ``deltahat = min(d0, d1, d2/2, d3/2)``.

Blossoms live in a rollback union-find: the live sets are the outermost
blossoms, and removing a blossom whose weight reached zero undoes its unions to
expose the blossoms nested inside.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .dsu import DisjointSets
from .graph import Graph, Matching, augment_in_place, matching_from_mate
from .mdfs import Mdfs
from .reduction import SINK, SOURCE, DirectedMatchingGraph, NO_EDGE

INF = float("inf")

# extension cases, in tie-break order
CASE_FREE = "d0"
CASE_GROW = "d1"
CASE_SHRINK = "d2"
CASE_EXPAND = "d3"
CASES = (CASE_FREE, CASE_GROW, CASE_SHRINK, CASE_EXPAND)


class WeightError(ValueError):
    """The weighted solver needs every edge weight to be at least 1."""


class DualInvariantError(AssertionError):
    pass


@dataclass(eq=False)
class Blossom:
    """An odd node set with positive weight. ``children`` are the units it was
    built from: nested blossoms or plain node ids."""

    nodes: frozenset[int]
    muhat: int
    base: int
    children: list
    parent: "Blossom | None" = None
    tokens: list = field(default_factory=list, repr=False)

    @property
    def capacity(self) -> int:
        return (len(self.nodes) - 1) // 2


class BlossomFamily:
    """Laminar blossom family. ``find`` gives the outermost blossom holding a
    node (or None), ``innermost`` the deepest one."""

    def __init__(self, n: int) -> None:
        self.n = n
        self.sets = DisjointSets()
        for v in range(1, n + 1):
            self.sets.make_set(v)
        self.innermost: list[Blossom | None] = [None] * (n + 1)
        self.live: list[Blossom] = []

    def outermost(self, v: int) -> Blossom | None:
        return self.sets.find(v).payload

    def chain(self, v: int) -> list[Blossom]:
        out = []
        b = self.innermost[v]
        while b is not None:
            out.append(b)
            b = b.parent
        return out

    def shared_muhat(self, u: int, v: int) -> int:
        total = 0
        b = self.innermost[u]
        while b is not None:
            if v in b.nodes:
                total += b.muhat
            b = b.parent
        return total

    def create(self, units: Sequence, base: int, muhat: int) -> Blossom:
        """Merge outermost units (blossoms or free-standing nodes) into a new blossom."""
        nodes: set[int] = set()
        for u in units:
            if isinstance(u, Blossom):
                if u.parent is not None:
                    raise DualInvariantError("only outermost blossoms can be nested")
                nodes |= u.nodes
            else:
                if self.innermost[u] is not None:
                    raise DualInvariantError(f"node {u} already sits in a blossom")
                nodes.add(u)
        if len(nodes) < 3 or len(nodes) % 2 == 0:
            raise DualInvariantError(f"blossom on {len(nodes)} nodes")
        blossom = Blossom(frozenset(nodes), muhat, base, list(units))
        current = None
        for u in units:
            rep = next(iter(u.nodes)) if isinstance(u, Blossom) else u
            rec = self.sets.find(rep)
            if current is None:
                current = rec
                continue
            token = self.sets.union(current, rec, payload=blossom)
            blossom.tokens.append(token)
            current = token.larger
        current.payload = blossom
        for u in units:
            if isinstance(u, Blossom):
                u.parent = blossom
                self.live.remove(u)
            else:
                self.innermost[u] = blossom
        self.live.append(blossom)
        return blossom

    def dissolve(self, blossom: Blossom) -> None:
        """Remove an outermost blossom; its children become outermost again."""
        if blossom.parent is not None:
            raise DualInvariantError("only outermost blossoms can be removed")
        for token in reversed(blossom.tokens):
            self.sets.deunion(token)
        self.live.remove(blossom)
        for u in blossom.children:
            if isinstance(u, Blossom):
                u.parent = None
                self.live.append(u)
            else:
                self.innermost[u] = None

    def all_blossoms(self) -> list[Blossom]:
        out = []
        stack = list(self.live)
        while stack:
            b = stack.pop()
            out.append(b)
            stack.extend(c for c in b.children if isinstance(c, Blossom))
        return out

    def refresh_bases(self, mate: Sequence[int]) -> None:
        for b in self.all_blossoms():
            exits = [v for v in b.nodes if mate[v] not in b.nodes]
            if len(exits) != 1:
                raise DualInvariantError(f"blossom {sorted(b.nodes)} lost its near-perfect matching")
            b.base = exits[0]


@dataclass
class DualState:
    pihat: list[int]
    family: BlossomFamily

    def blossoms(self) -> list[Blossom]:
        return self.family.all_blossoms()


@dataclass
class SearchForest:
    """Outcome of the labelling of the tight subgraph after a failed search.

    ``outer`` are nodes whose B label is in the search tree; ``inner_nodes``
    are stand-alone nodes reached only through their A label; ``inner_blossoms``
    are live blossoms entered through an unmatched edge; ``shrunk`` lists the
    outermost blossoms of the search as ``(base, units)``; ``outer_units`` maps
    every node to its outermost search unit id.
    """

    outer: set[int]
    inner_nodes: set[int]
    inner_blossoms: list[Blossom]
    shrunk: list[tuple[int, list]]
    outer_blossoms: list[Blossom]
    outer_units: dict[int, int]
    outer_bases: set[int] = field(default_factory=set)
    augmenting: bool = False

    @property
    def b_labels(self) -> set[int]:
        """B labels in the tree, as label ids."""
        return {2 * v + 1 for v in self.outer}

    @property
    def a_labels(self) -> set[int]:
        """A labels in the tree: inner nodes, the bases of inner blossoms and
        every outer node except the base of its outer unit."""
        out = {2 * v for v in self.inner_nodes}
        out.update(2 * b.base for b in self.inner_blossoms)
        out.update(2 * v for v in self.outer if v not in self.outer_bases)
        return out


def init_duals(g: Graph) -> DualState:
    """pihat = W at every node, where W is the largest edge weight."""
    for u, v, w in g.edges:
        if w <= 0:
            raise WeightError(f"edge ({u}, {v}) has weight {w}; weights must be at least 1")
    top = g.max_weight()
    return DualState([0] + [top] * g.n, BlossomFamily(g.n))


def reduced_cost(g: Graph, state: DualState, edge_index: int) -> int:
    u, v, w = g.edges[edge_index]
    return state.pihat[u] + state.pihat[v] + state.family.shared_muhat(u, v) - 2 * w


def _reduced_costs(g: Graph, state: DualState) -> list[int]:
    pihat = state.pihat
    fam = state.family
    out = []
    for u, v, w in g.edges:
        r = pihat[u] + pihat[v] - 2 * w
        if fam.innermost[u] is not None and fam.innermost[v] is not None:
            r += fam.shared_muhat(u, v)
        out.append(r)
    return out


def equality_subgraph(g: Graph, mate: Sequence[int], state: DualState) -> DirectedMatchingGraph:
    """The label graph restricted to tight edges (no blossom jumps)."""
    rhat = _reduced_costs(g, state)
    for i, r in enumerate(rhat):
        if r < 0:
            u, v, _ = g.edges[i]
            raise DualInvariantError(f"edge ({u}, {v}) has negative reduced cost {r}")
    n = g.n
    start = [0] * (2 * n + 3)
    targets: list[int] = []
    origin: list[int] = []
    for v in range(1, n + 1):
        if mate[v] == 0:
            targets.append(2 * v + 1)
            origin.append(NO_EDGE)
    start[1] = start[2] = len(targets)
    for v in range(1, n + 1):
        mv = mate[v]
        if mv:
            targets.append(2 * mv + 1)
            origin.append(g.edge_index(v, mv))
        else:
            targets.append(SINK)
            origin.append(NO_EDGE)
        start[2 * v + 1] = len(targets)
        for x, idx in g.adjacency[v]:
            if x != mv and rhat[idx] == 0:
                targets.append(2 * x)
                origin.append(idx)
        start[2 * v + 2] = len(targets)
    return DirectedMatchingGraph(n, tuple(start), tuple(targets), tuple(origin), tuple(mate))


# -- search step ------------------------------------------------------------


class _JumpGraph:
    """Tight label graph over ``allowed`` nodes in which unmatched arcs into a
    blossom (below ``scope``) that does not hold the tail lead to the
    blossom's base instead."""

    def __init__(
        self,
        n: int,
        mate: Sequence[int],
        tight: list[list[int]],
        family: BlossomFamily,
        allowed: set[int] | None,
        free: Iterable[int],
        scope: Blossom | None,
    ) -> None:
        self.family = family
        self.scope = scope
        self.jumps: dict[tuple[int, int], tuple[int, Blossom]] = {}
        start = [0] * (2 * n + 3)
        targets: list[int] = []
        free = sorted(free)
        free_set = set(free)
        for v in free:
            targets.append(2 * v + 1)
        start[1] = start[2] = len(targets)
        innermost = family.innermost
        for v in range(1, n + 1):
            inside = allowed is None or v in allowed
            if inside:
                if v in free_set:
                    targets.append(SINK)
                else:
                    targets.append(2 * mate[v] + 1)
            start[2 * v + 1] = len(targets)
            if inside:
                seen = set()
                for x in tight[v]:
                    if allowed is not None and x not in allowed:
                        continue
                    head = x
                    hop = None
                    b = innermost[x]
                    while b is not None and b is not scope:
                        if v in b.nodes:
                            break
                        hop = b
                        b = b.parent
                    if hop is not None:
                        head = hop.base
                    if head in seen:
                        continue
                    seen.add(head)
                    if hop is not None and head != x:
                        self.jumps[(2 * v + 1, 2 * head)] = (x, hop)
                    targets.append(2 * head)
            start[2 * v + 2] = len(targets)
        self.start = start
        self.targets = targets
        self.label_count = 2 * n + 2


def _tight_lists(g: Graph, mate: Sequence[int], rhat: Sequence[int]) -> list[list[int]]:
    tight: list[list[int]] = [[] for _ in range(g.n + 1)]
    for idx, (u, v, _) in enumerate(g.edges):
        if rhat[idx] == 0 and mate[u] != v:
            tight[u].append(v)
            tight[v].append(u)
    return tight


def _lift(path: list[int], jg: _JumpGraph, mate, tight, family) -> list[int]:
    nodes: list[int] = []
    inner = path[1:-1]
    for i in range(0, len(inner), 2):
        b_label, a_label = inner[i], inner[i + 1]
        nodes.append(b_label >> 1)
        hop = jg.jumps.get((b_label, a_label))
        if hop is None:
            nodes.append(a_label >> 1)
        else:
            entry, blossom = hop
            nodes.extend(_walk_to_base(entry, blossom, mate, tight, family))
    return nodes


def _walk_to_base(v: int, blossom: Blossom, mate, tight, family) -> list[int]:
    """An even alternating path inside ``blossom`` from ``v`` to its base,
    starting with v's matched edge."""
    if v == blossom.base:
        return [v]
    sub = None
    b = family.innermost[v]
    while b is not None and b is not blossom:
        sub = b
        b = b.parent
    if b is not blossom:
        raise DualInvariantError(f"node {v} is not inside the blossom")
    if sub is not None:
        prefix = _walk_to_base(v, sub, mate, tight, family)
        entry = sub.base
        removed = sub.nodes
    else:
        prefix = [v]
        entry = v
        removed = frozenset((v,))
    if entry == blossom.base:
        return prefix
    exit_node = mate[entry]
    allowed = set(blossom.nodes) - removed
    jg = _JumpGraph(family.n, mate, tight, family, allowed, (exit_node, blossom.base), blossom)
    search = Mdfs(jg.label_count, jg.start, jg.targets)
    path = search.run()
    if path is None:
        raise DualInvariantError(f"no alternating path to the base inside blossom {sorted(blossom.nodes)}")
    local = _lift(path, jg, mate, tight, family)
    if local[0] != exit_node:
        local.reverse()
    return prefix + local


def weighted_search_step(
    g: Graph, mate: Sequence[int], state: DualState, rhat: Sequence[int] | None = None
) -> list[int] | None:
    """One search over the tight subgraph. Returns an augmenting node path
    (blossom jumps already expanded) or None."""
    if rhat is None:
        rhat = _reduced_costs(g, state)
    tight = _tight_lists(g, mate, rhat)
    free = [v for v in range(1, g.n + 1) if mate[v] == 0]
    if len(free) < 2:
        return None
    jg = _JumpGraph(g.n, mate, tight, state.family, None, free, None)
    search = Mdfs(jg.label_count, jg.start, jg.targets)
    path = search.run()
    if path is None:
        return None
    nodes = _lift(path, jg, mate, tight, state.family)
    _check_tight_path(g, mate, rhat, nodes)
    return nodes


def _check_tight_path(g: Graph, mate, rhat, nodes: list[int]) -> None:
    if len(set(nodes)) != len(nodes) or len(nodes) % 2:
        raise DualInvariantError(f"search returned a non-simple path {nodes}")
    if mate[nodes[0]] or mate[nodes[-1]]:
        raise DualInvariantError("path endpoints must be free")
    for i in range(len(nodes) - 1):
        u, v = nodes[i], nodes[i + 1]
        idx = g.edge_index(u, v)
        if idx is None or rhat[idx] != 0:
            raise DualInvariantError(f"path uses a non-tight pair ({u}, {v})")
        if (mate[u] == v) != (i % 2 == 1):
            raise DualInvariantError(f"path does not alternate at ({u}, {v})")


# -- labelling for the extension step --------------------------------------


def label_forest(g: Graph, mate: Sequence[int], state: DualState, rhat: Sequence[int]) -> SearchForest:
    """Grow outer/inner labels from every free node over tight edges, treating
    outermost live blossoms as single units and shrinking odd cycles."""
    family = state.family
    n = g.n
    unit_of = [0] * (n + 1)
    unit_nodes: dict[int, list[int]] = {}
    unit_blossom: dict[int, Blossom | None] = {}
    for v in range(1, n + 1):
        b = family.outermost(v)
        u = b.base if b is not None else v
        unit_of[v] = u
        if u not in unit_nodes:
            unit_nodes[u] = []
            unit_blossom[u] = b
        unit_nodes[u].append(v)

    OUTER, INNER = 1, 2
    label: dict[int, int] = {}
    reached_from: dict[int, int] = {}  # inner unit -> outer node that reached it
    rep: dict[int, int] = {u: u for u in unit_nodes}  # search shrink union-find
    shrink_base: dict[int, int] = {u: u for u in unit_nodes}
    members: dict[int, list[int]] = {u: [u] for u in unit_nodes}
    queue: deque[int] = deque()

    def find(u: int) -> int:
        root = u
        while rep[root] != root:
            root = rep[root]
        while rep[u] != root:
            rep[u], u = root, rep[u]
        return root

    def mark_outer(u: int) -> None:
        label[u] = OUTER
        queue.extend(unit_nodes[u])

    for u in unit_nodes:
        if mate[u] == 0:
            mark_outer(u)

    def up(unit: int) -> int | None:
        """Outer unit above the outer unit ``unit`` in the forest, or None at a root."""
        base = shrink_base[find(unit)]
        m = mate[base]
        if m == 0:
            return None
        inner = unit_of[m]
        return unit_of[reached_from[inner]]

    def root_and_path(unit: int) -> list[int]:
        path = [shrink_base[find(unit)]]
        while True:
            nxt = up(path[-1])
            if nxt is None:
                return path
            path.append(shrink_base[find(nxt)])

    def shrink(a: int, b: int) -> bool:
        pa = root_and_path(a)
        pb = root_and_path(b)
        if pa[-1] != pb[-1]:
            return False
        on_a = set(pa)
        lca = next(x for x in pb if x in on_a)
        keep = find(lca)
        for path in (pa, pb):
            for outer_unit in path:
                if outer_unit == lca:
                    break
                r = find(outer_unit)
                inner = unit_of[mate[shrink_base[r]]]
                for part in (r, inner):
                    pr = find(part)
                    if pr == keep:
                        continue
                    rep[pr] = keep
                    members[keep].extend(members.pop(pr))
                    if label.get(part) == INNER:
                        label[part] = OUTER
                        queue.extend(unit_nodes[part])
        shrink_base[keep] = lca
        return True

    augmenting = False
    tight = _tight_lists(g, mate, rhat)
    while queue and not augmenting:
        i = queue.popleft()
        ui = unit_of[i]
        for j in tight[i]:
            uj = unit_of[j]
            if find(ui) == find(uj):
                continue
            lj = label.get(uj)
            if lj is None:
                label[uj] = INNER
                reached_from[uj] = i
                base = uj
                if mate[base] == 0:
                    raise DualInvariantError("a free unit was left unlabelled")
                mark_outer(unit_of[mate[base]])
            elif lj == OUTER:
                if not shrink(ui, uj):
                    augmenting = True
                    break

    outer: set[int] = set()
    inner_nodes: set[int] = set()
    inner_blossoms: list[Blossom] = []
    outer_units: dict[int, int] = {}
    shrunk: list[tuple[int, list]] = []
    outer_blossoms: list[Blossom] = []
    outer_bases: set[int] = set()
    for root, parts in members.items():
        if label.get(root) == OUTER or len(parts) > 1:
            outer_bases.add(shrink_base[root])
        if len(parts) > 1:
            units = [unit_blossom[p] if unit_blossom[p] is not None else p for p in parts]
            shrunk.append((shrink_base[root], units))
        for p in parts:
            lab = label.get(p)
            if len(parts) > 1:
                lab = OUTER
            if lab == OUTER:
                outer.update(unit_nodes[p])
                for v in unit_nodes[p]:
                    outer_units[v] = root
                if len(parts) == 1 and unit_blossom[p] is not None:
                    outer_blossoms.append(unit_blossom[p])
            elif lab == INNER:
                if unit_blossom[p] is None:
                    inner_nodes.add(p)
                else:
                    inner_blossoms.append(unit_blossom[p])
    return SearchForest(
        outer, inner_nodes, inner_blossoms, shrunk, outer_blossoms, outer_units, outer_bases, augmenting
    )


# -- extension step ---------------------------------------------------------


def compute_delta(g: Graph, mate: Sequence[int], state: DualState, forest: SearchForest, rhat: Sequence[int]):
    """Return ``(deltahat, case)`` with ties resolved in the order d0, d1, d2, d3."""
    free = [v for v in range(1, g.n + 1) if mate[v] == 0]
    d0 = state.pihat[free[0]] if free else INF
    d1 = INF
    d2 = INF
    outer = forest.outer
    inner_nodes = forest.inner_nodes
    inner_members = set()
    for b in forest.inner_blossoms:
        inner_members |= b.nodes
    units = forest.outer_units
    for idx, (u, v, _) in enumerate(g.edges):
        ou = u in outer
        ov = v in outer
        if ou and ov:
            if units[u] != units[v] and rhat[idx] > 0:
                if rhat[idx] % 2:
                    raise DualInvariantError(f"odd reduced cost {rhat[idx]} between two outer nodes")
                d2 = min(d2, rhat[idx] // 2)
        elif ou or ov:
            other = v if ou else u
            if other not in inner_nodes and other not in inner_members:
                d1 = min(d1, rhat[idx])
    d3 = INF
    for b in forest.inner_blossoms:
        if b.muhat % 2:
            raise DualInvariantError("odd blossom weight")
        d3 = min(d3, b.muhat // 2)
    best = min(d0, d1, d2, d3)
    if best == INF:
        raise DualInvariantError("no bound on the dual change")
    for case, value in zip(CASES, (d0, d1, d2, d3)):
        if value == best:
            return int(best), case
    raise AssertionError("unreachable")


def apply_extension(state: DualState, forest: SearchForest, deltahat: int) -> list[Blossom]:
    """Move the duals by ``deltahat``; returns blossoms dropped at weight zero."""
    pihat = state.pihat
    family = state.family
    for v in forest.outer:
        pihat[v] -= deltahat
        if pihat[v] < 0:
            raise DualInvariantError(f"node {v} would get a negative weight")
    for v in forest.inner_nodes:
        pihat[v] += deltahat
    for b in forest.inner_blossoms:
        for v in b.nodes:
            pihat[v] += deltahat
        b.muhat -= 2 * deltahat
        if b.muhat < 0:
            raise DualInvariantError("blossom weight would go negative")
    for b in forest.outer_blossoms:
        b.muhat += 2 * deltahat
    if deltahat > 0:
        for base, units in forest.shrunk:
            family.create(units, base, 2 * deltahat)
    dropped = [b for b in forest.inner_blossoms if b.muhat == 0]
    for b in dropped:
        family.dissolve(b)
    return dropped


def _check_feasible(g: Graph, state: DualState, mate: Sequence[int]) -> list[int]:
    rhat = _reduced_costs(g, state)
    for idx, r in enumerate(rhat):
        u, v, _ = g.edges[idx]
        if r < 0:
            raise DualInvariantError(f"edge ({u}, {v}) has reduced cost {r}")
        if mate[u] == v and r != 0:
            raise DualInvariantError(f"matched edge ({u}, {v}) is not tight")
    return rhat


def solve_weighted(
    g: Graph,
    stats: dict | None = None,
    trace: Callable[[str], None] | None = None,
) -> tuple[Matching, DualState]:
    """Maximum-weight matching together with an optimality certificate."""
    state = init_duals(g)
    n = g.n
    mate = [0] * (n + 1)
    budget = 3 * n
    changes_since_aug = 0
    per_augmentation: list[int] = []
    case_counts = dict.fromkeys(CASES, 0)
    augmentations = 0
    rhat = _reduced_costs(g, state)
    while True:
        path = weighted_search_step(g, mate, state, rhat)
        if path is not None:
            augment_in_place(mate, path)
            state.family.refresh_bases(mate)
            augmentations += 1
            per_augmentation.append(changes_since_aug)
            changes_since_aug = 0
            if trace is not None:
                trace(f"augment {' '.join(map(str, path))}")
            rhat = _check_feasible(g, state, mate)
            continue
        if all(mate[v] for v in range(1, n + 1)):
            break
        forest = label_forest(g, mate, state, rhat)
        if forest.augmenting:
            raise DualInvariantError("labelling found an augmenting path the search missed")
        deltahat, case = compute_delta(g, mate, state, forest, rhat)
        apply_extension(state, forest, deltahat)
        case_counts[case] += 1
        changes_since_aug += 1
        if trace is not None:
            trace(f"extend {case} {deltahat}")
        rhat = _check_feasible(g, state, mate)
        if case == CASE_FREE:
            break
        if changes_since_aug > budget:
            raise DualInvariantError(f"{changes_since_aug} dual changes without augmenting (limit {budget})")
    per_augmentation.append(changes_since_aug)
    m = matching_from_mate(g, mate)
    if stats is not None:
        stats["augmentations"] = augmentations
        stats["dual_changes"] = per_augmentation
        stats["max_dual_changes"] = max(per_augmentation)
        stats["dual_change_budget"] = budget
        stats["cases"] = case_counts
    return m, state


# -- certificate ------------------------------------------------------------


@dataclass
class Certificate:
    """Doubled duals detached from the solver: ``pihat[v]`` for nodes 1..n and
    blossoms as ``(base, muhat, nodes)``."""

    pihat: list[int]
    blossoms: list[tuple[int, int, frozenset[int]]]

    @classmethod
    def from_state(cls, state: DualState) -> "Certificate":
        bl = [(b.base, b.muhat, b.nodes) for b in state.blossoms()]
        bl.sort(key=lambda t: (len(t[2]), sorted(t[2])))
        return cls(list(state.pihat), bl)


def verify_certificate(g: Graph, m: Matching, cert: "Certificate | DualState") -> tuple[bool, list[str]]:
    """Check optimality of ``m`` from the duals alone. Returns (ok, problems)."""
    if isinstance(cert, DualState):
        cert = Certificate.from_state(cert)
    problems: list[str] = []
    n = g.n
    pihat = cert.pihat
    if len(pihat) != n + 1:
        return False, [f"expected {n} node weights, got {len(pihat) - 1}"]
    for v in range(1, n + 1):
        if pihat[v] < 0:
            problems.append(f"node {v} has negative weight {pihat[v]}")
    sets = []
    for base, muhat, nodes in cert.blossoms:
        if muhat <= 0:
            problems.append(f"blossom at {base} has weight {muhat}")
        if len(nodes) < 3 or len(nodes) % 2 == 0:
            problems.append(f"blossom at {base} has {len(nodes)} nodes")
        if any(not 1 <= v <= n for v in nodes):
            problems.append(f"blossom at {base} names a node outside 1..{n}")
        sets.append((nodes, muhat))
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            a, b = sets[i][0], sets[j][0]
            if a & b and not (a <= b or b <= a):
                problems.append(f"blossoms {sorted(a)} and {sorted(b)} cross")
    matched = m.edge_indices
    total = 0
    for idx, (u, v, w) in enumerate(g.edges):
        r = pihat[u] + pihat[v] - 2 * w
        for nodes, muhat in sets:
            if u in nodes and v in nodes:
                r += muhat
        if r < 0:
            problems.append(f"(a) edge ({u}, {v}) has reduced cost {r}")
        if idx in matched:
            total += w
            if r != 0:
                problems.append(f"(b) matched edge ({u}, {v}) has reduced cost {r}")
    for v in range(1, n + 1):
        if m.mate[v] == 0 and pihat[v] != 0:
            problems.append(f"(c) free node {v} has weight {pihat[v]}")
    cap_total = 0
    for nodes, muhat in sets:
        inside = sum(1 for v in nodes if m.mate[v] in nodes) // 2
        cap = (len(nodes) - 1) // 2
        cap_total += cap * muhat
        if muhat > 0 and inside != cap:
            problems.append(f"(d) blossom {sorted(nodes)} holds {inside} matched edges, needs {cap}")
    lhs = 2 * total
    rhs = sum(pihat[1:]) + cap_total
    if lhs != rhs:
        problems.append(f"(e) twice the matching weight is {lhs} but the duals sum to {rhs}")
    return not problems, problems


def emit_certificate(cert: "Certificate | DualState") -> str:
    if isinstance(cert, DualState):
        cert = Certificate.from_state(cert)
    lines = [f"pi {v} {cert.pihat[v]}" for v in range(1, len(cert.pihat))]
    for base, muhat, nodes in cert.blossoms:
        lines.append(f"blossom {base} {muhat} " + " ".join(map(str, sorted(nodes))))
    return "\n".join(lines) + "\n"


def parse_certificate(g: Graph, text: str) -> Certificate:
    from .graph import ParseError

    pihat = [0] * (g.n + 1)
    seen = set()
    blossoms = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        try:
            values = [int(x) for x in parts[1:]]
        except ValueError:
            raise ParseError(f"non-integer field in {line!r}", lineno) from None
        if parts[0] == "pi" and len(values) == 2:
            v, value = values
            if not 1 <= v <= g.n:
                raise ParseError(f"node {v} outside 1..{g.n}", lineno)
            if v in seen:
                raise ParseError(f"node {v} given twice", lineno)
            seen.add(v)
            pihat[v] = value
        elif parts[0] == "blossom" and len(values) >= 3:
            base, muhat, *nodes = values
            if len(set(nodes)) != len(nodes):
                raise ParseError("blossom repeats a node", lineno)
            blossoms.append((base, muhat, frozenset(nodes)))
        else:
            raise ParseError(f"unrecognised certificate line {line!r}", lineno)
    if len(seen) != g.n:
        raise ParseError(f"certificate gives {len(seen)} of {g.n} node weights", 0)
    return Certificate(pihat, blossoms)
