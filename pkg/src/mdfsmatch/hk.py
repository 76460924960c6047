"""Phase solver: layered label graphs by modified breadth-first search, then
a maximal set of disjoint shortest paths per phase by the modified depth-first
search.

Levels are shortest strongly simple distances from the source. Each node has a
first level (the smaller of its two label levels) and a second level. First
levels are found in part 1 of a phase by ordinary breadth-first steps. Second
levels are found in part 2: every *bridge* pair of equal-side labels whose
level sum is ``2l`` triggers a backward search from both labels toward the
source that stops at the deepest label common to all their shortest paths
(the dominator). Every label passed on the way hands its partner the level
``level(x) + level(y) + 1 - level(label)``. Labels already handled by an
earlier backward search are skipped in one step, through a disjoint-set
structure that maps them to that search's dominator.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Callable

from .graph import Graph, Matching, augment_in_place, empty_matching, matching_from_mate
from .mdfs import Mdfs
from .reduction import SINK, SOURCE, DirectedMatchingGraph, build_gm_from_mate

UNDEF = -1


class PhaseError(AssertionError):
    """An internal consistency check of the phase machinery failed."""


@dataclass
class LayeredGraph:
    g_m: DirectedMatchingGraph
    level: list[int]
    arcs: list[tuple[int, int]]
    buckets: dict[int, list[tuple[int, int]]]
    dominators: dict[tuple[int, int], int] = field(default_factory=dict)
    late_pairs: int = 0

    @property
    def sink_level(self) -> int:
        return self.level[SINK]

    def first_level(self, v: int) -> int:
        a, b = self.level[2 * v], self.level[2 * v + 1]
        if a == UNDEF:
            return b
        if b == UNDEF:
            return a
        return min(a, b)

    def second_level(self, v: int) -> int:
        a, b = self.level[2 * v], self.level[2 * v + 1]
        if a == UNDEF or b == UNDEF:
            return UNDEF
        return max(a, b)


class _Mbfs:
    def __init__(self, g_m: DirectedMatchingGraph, full: bool = False) -> None:
        self.g_m = g_m
        self.full = full
        L = g_m.label_count
        self.L = L
        self.start = g_m.start
        self.targets = g_m.targets
        self.level = [UNDEF] * L
        self.by_level: list[list[int]] = [[] for _ in range(L + 2)]
        self.buckets: dict[int, list[tuple[int, int]]] = {}
        self.pair_seen: set[int] = set()
        self.arcs: list[tuple[int, int]] = []
        self.arc_seen: set[int] = set()
        self.preds: list[list[int] | None] = [None] * L
        self.dormant: dict[int, list[int]] = {}
        # skip sets: labels handled by a finished backward search point to a
        # group; a group's root knows that search's dominator. No undo is
        # needed here, so a plain path-halving union-find is enough.
        self.owner = [-1] * L
        self.group_parent: list[int] = []
        self.group_dom: list[int] = []
        self.dominators: dict[tuple[int, int], int] = {}
        self.phase = 0
        self.max_level = 0
        self.min_free_a = UNDEF
        self.late_pairs = 0
        self.stamp = [0] * L
        self.stamp_counter = 0
        self.mate = g_m.mate

    # -- bookkeeping ----------------------------------------------------------

    def add_arc(self, x: int, y: int) -> None:
        key = x * self.L + y
        if key in self.arc_seen:
            return
        self.arc_seen.add(key)
        self.arcs.append((x, y))
        p = self.preds[y]
        if p is None:
            self.preds[y] = [x]
        else:
            p.append(x)

    def set_level(self, x: int, value: int) -> None:
        level = self.level
        if level[x] != UNDEF:
            raise PhaseError(f"label {x} leveled twice")
        level[x] = value
        if value > self.max_level:
            self.max_level = value
        if value < len(self.by_level):
            self.by_level[value].append(x)
        if x & 1:
            # arcs x -> [u,A] mirror arcs [u,B] -> partner(x): pair up leveled ones
            targets = self.targets
            for i in range(self.start[x], self.start[x + 1]):
                ub = targets[i] ^ 1
                if level[ub] != UNDEF:
                    self.add_pair(ub, x)
        else:
            m = self.mate[x >> 1]
            if m == 0:
                if self.min_free_a == UNDEF or value < self.min_free_a:
                    self.min_free_a = value
            elif level[2 * m] != UNDEF:
                self.add_pair(x, 2 * m)

    def add_pair(self, x: int, y: int) -> None:
        if y < x:
            x, y = y, x
        key = x * self.L + y
        if key in self.pair_seen:
            return
        self.pair_seen.add(key)
        k = (self.level[x] + self.level[y]) // 2
        if k < self.phase - 1:
            # the pair's phase is already over; handle it in the current one
            self.late_pairs += 1
            k = self.phase - 1
        bucket = self.buckets.get(k)
        if bucket is None:
            self.buckets[k] = [(x, y)]
        else:
            bucket.append((x, y))

    # -- part 1 ---------------------------------------------------------------

    def part_one(self, l: int) -> None:
        level = self.level
        layer = self.by_level[l] if l < len(self.by_level) else []
        start, targets = self.start, self.targets
        if l == 0:
            for i in range(start[SOURCE], start[SOURCE + 1]):
                x = targets[i]
                self.set_level(x, 1)
                self.add_arc(SOURCE, x)
            return
        if l % 2 == 0:
            for va in layer:
                if va < 2:
                    continue
                vb = va ^ 1
                if level[vb] != UNDEF and level[vb] < l:
                    continue  # second level: handled by part 2
                w = self.mate[va >> 1]
                if w == 0:
                    continue
                wb = 2 * w + 1
                if level[wb] == UNDEF:
                    self.set_level(wb, l + 1)
                elif level[wb] != l + 1:
                    raise PhaseError("matched successor leveled inconsistently")
                self.add_arc(va, wb)
            return
        for vb in layer:
            for i in range(start[vb], start[vb + 1]):
                wa = targets[i]
                la = level[wa]
                lb = level[wa ^ 1]
                if (la == UNDEF or la > l) and (lb == UNDEF or lb > l):
                    if la == UNDEF:
                        self.set_level(wa, l + 1)
                    elif la != l + 1:
                        raise PhaseError("first level found after a larger second level")
                    self.add_arc(vb, wa)
                elif lb != UNDEF:
                    self.add_pair(vb, wa ^ 1)

    # -- part 2 ---------------------------------------------------------------

    def part_two(self, l: int) -> None:
        bucket = self.buckets.get(l)
        if not bucket:
            return
        if not self.full and self.min_free_a != UNDEF and 2 * l + 1 > self.min_free_a + 1:
            # bridges longer than the shortest augmenting path only level
            # labels that no shortest augmenting path can use
            return
        i = 0
        while i < len(bucket):
            x, y = bucket[i]
            i += 1
            self.bridge_search(x, y)
        del self.buckets[l]

    def _group(self, g: int) -> int:
        parent = self.group_parent
        while parent[g] != g:
            parent[g] = parent[parent[g]]
            g = parent[g]
        return g

    def bridge_search(self, x: int, y: int) -> int:
        level = self.level
        stamp = self.stamp
        owner = self.owner
        group_dom = self.group_dom
        preds_of = self.preds
        L = self.L
        total = level[x] + level[y] + 1
        self.stamp_counter += 1
        cur = self.stamp_counter
        pending_arcs = [(x, y ^ 1), (y, x ^ 1)]
        absorbed: list[int] = []
        expanded: list[int] = []
        newly: list[int] = []
        heap: list[int] = []  # keys -(level * L + label): deepest label first
        front = 0
        for z in (x, y):
            while owner[z] != -1 and stamp[z] != cur:
                stamp[z] = cur
                root = self._group(owner[z])
                absorbed.append(root)
                z = group_dom[root]
            if stamp[z] != cur:
                stamp[z] = cur
                front += 1
                heapq.heappush(heap, -(level[z] * L + z))
        while front > 1:
            c = -heapq.heappop(heap) % L
            front -= 1
            expanded.append(c)
            partner = c ^ 1
            if c >= 2 and level[partner] == UNDEF:
                self.set_level(partner, total - level[c])
                newly.append(partner)
            want = level[c] - 1
            preds = preds_of[c]
            if not preds:
                continue
            for p in preds:
                if level[p] != want:
                    continue
                if c >= 2 and p >= 2:
                    pending_arcs.append((partner, p ^ 1))
                z = p
                while owner[z] != -1 and stamp[z] != cur:
                    stamp[z] = cur
                    root = self._group(owner[z])
                    absorbed.append(root)
                    z = group_dom[root]
                if stamp[z] != cur:
                    stamp[z] = cur
                    front += 1
                    heapq.heappush(heap, -(level[z] * L + z))
        if front == 0:
            raise PhaseError("backward search lost every path to the source")
        dom = -heap[0] % L
        self.dominators[(x, y) if x < y else (y, x)] = dom
        add_arc = self.add_arc
        for tail, head in pending_arcs:
            if level[head] == UNDEF:
                self.dormant.setdefault(head, []).append(tail)
            else:
                add_arc(tail, head)
        for z in newly:
            waiting = self.dormant.pop(z, None)
            if waiting:
                for tail in waiting:
                    add_arc(tail, z)
        if expanded or absorbed:
            group = len(self.group_parent)
            self.group_parent.append(group)
            group_dom.append(dom)
            for root in absorbed:
                self.group_parent[self._group(root)] = group
            for c in expanded:
                if c >= 2 and owner[c] == -1:
                    owner[c] = group
            for z in newly:
                owner[z] = group
        return dom

    # -- driver ---------------------------------------------------------------

    def run(self) -> None:
        self.level[SOURCE] = 0
        self.by_level[0].append(SOURCE)
        limit = 2 * self.L + 4
        for p in range(1, limit):
            self.phase = p
            l = p - 1
            self.part_one(l)
            self.part_two(l)
            if not self.full and self.min_free_a != UNDEF and p >= self.min_free_a:
                break
            if p > self.max_level + 1 and not any(k >= p for k, b in self.buckets.items() if b):
                break
        if self.min_free_a != UNDEF:
            self.level[SINK] = self.min_free_a + 1
            for v in range(1, self.g_m.n + 1):
                if self.mate[v] == 0 and self.level[2 * v] == self.min_free_a:
                    self.add_arc(2 * v, SINK)


def mbfs_layers(g_m: DirectedMatchingGraph, full: bool = False) -> LayeredGraph:
    """Level the labels reachable from the source along strongly simple paths.

    By default the search stops once the sink's level is known and skips
    bridges longer than the shortest augmenting path. ``full=True`` keeps
    going until every reachable label has its level.
    """
    st = _Mbfs(g_m, full)
    st.run()
    return LayeredGraph(g_m, st.level, st.arcs, st.buckets, st.dominators, st.late_pairs)


def dom_resolve(layered: LayeredGraph, x: int, y: int) -> int:
    """The dominator recorded for the bridge pair ``(x, y)``.

    Raises KeyError for a pair that was never searched as a bridge (for
    instance one skipped because it is longer than the shortest path).
    """
    if layered.level[x] == UNDEF or layered.level[y] == UNDEF:
        raise ValueError("both labels need a level")
    key = (x, y) if x < y else (y, x)
    if key in layered.dominators:
        return layered.dominators[key]
    raise KeyError(f"pair {key} was not processed as a bridge")


def _csr(count: int, arcs: list[tuple[int, int]]) -> tuple[list[int], list[int], list[int], list[int]]:
    out_deg = [0] * (count + 1)
    in_deg = [0] * (count + 1)
    for tail, head in arcs:
        out_deg[tail + 1] += 1
        in_deg[head + 1] += 1
    for i in range(count):
        out_deg[i + 1] += out_deg[i]
        in_deg[i + 1] += in_deg[i]
    targets = [0] * len(arcs)
    sources = [0] * len(arcs)
    fill_out = out_deg[:-1].copy()
    fill_in = in_deg[:-1].copy()
    for tail, head in arcs:
        targets[fill_out[tail]] = head
        fill_out[tail] += 1
        sources[fill_in[head]] = tail
        fill_in[head] += 1
    return out_deg, targets, in_deg, sources


class PositionedGraph:
    """The layered arcs unrolled by path position.

    A label ``x`` can sit at position ``j`` of a shortest path only if
    ``level(x) <= j <= L - level(partner(x))``. Copies ``(x, j)`` and
    ``(partner(x), L - j)`` form one copy node, so the unrolled graph has the
    same A/B shape as a reduction graph and the depth-first search runs on it
    unchanged. Every source-sink path in it has length exactly ``L``.
    """

    def __init__(self, layered: LayeredGraph) -> None:
        level = layered.level
        total = layered.sink_level
        self.total = total
        self.copy_of: dict[tuple[int, int], int] = {}
        self.copy_node: list[int] = [0]  # copy id -> node of G (index 0 unused)
        self.copy_pos: list[int] = [0]  # copy id -> position of its A label
        self.copies: dict[int, list[int]] = {}

        low = [UNDEF] * len(level)
        high = [UNDEF] * len(level)
        for x in range(2, len(level)):
            lx, lp = level[x], level[x ^ 1]
            if lx != UNDEF and lp != UNDEF:
                low[x] = lx
                high[x] = total - lp
        low[SOURCE] = high[SOURCE] = 0
        low[SINK] = high[SINK] = total

        seen: set[tuple[int, int]] = set()
        arcs: list[tuple[int, int]] = []
        label = self._label
        for x, y in layered.arcs:
            for tail, head in ((x, y), (y ^ 1, x ^ 1)):
                lo_t = low[tail]
                lo_h = low[head]
                if lo_t == UNDEF or lo_h == UNDEF or (tail, head) in seen:
                    continue
                seen.add((tail, head))
                first = lo_t if lo_t >= lo_h - 1 else lo_h - 1
                if (first - lo_t) & 1:
                    first += 1
                last = high[tail] if high[tail] <= high[head] - 1 else high[head] - 1
                for pos in range(first, last + 1, 2):
                    arcs.append((label(tail, pos), label(head, pos + 1)))
        self.label_count = 2 * len(self.copy_node)
        self.start, self.targets, self.rstart, self.sources = _csr(self.label_count, arcs)

    def _label(self, x: int, pos: int) -> int:
        if x < 2:
            return x
        a_pos = pos if not x & 1 else self.total - pos
        key = (x >> 1, a_pos)
        cid = self.copy_of.get(key)
        if cid is None:
            cid = len(self.copy_node)
            self.copy_of[key] = cid
            self.copy_node.append(x >> 1)
            self.copy_pos.append(a_pos)
            self.copies.setdefault(x >> 1, []).append(cid)
        return 2 * cid + (x & 1)

    def original(self, label: int) -> int:
        if label < 2:
            return label
        return 2 * self.copy_node[label >> 1] + (label & 1)


def extract_disjoint_paths(layered: LayeredGraph) -> list[list[int]]:
    """A maximal set of node-disjoint shortest augmenting paths, as label
    sequences, drawn from the layered graph."""
    if layered.sink_level == UNDEF:
        return []
    unrolled = PositionedGraph(layered)
    count = unrolled.label_count
    start, targets = unrolled.start, unrolled.targets
    rstart, sources = unrolled.rstart, unrolled.sources
    alive = [True] * count
    out_left = [start[i + 1] - start[i] for i in range(count)]
    in_left = [rstart[i + 1] - rstart[i] for i in range(count)]

    def kill(first: list[int]) -> None:
        queue = [z for z in first if alive[z]]
        for z in queue:
            alive[z] = False
        while queue:
            z = queue.pop()
            for k in range(start[z], start[z + 1]):
                h = targets[k]
                if alive[h]:
                    in_left[h] -= 1
                    if in_left[h] == 0 and h != SINK:
                        alive[h] = False
                        queue.append(h)
            for k in range(rstart[z], rstart[z + 1]):
                tl = sources[k]
                if alive[tl]:
                    out_left[tl] -= 1
                    if out_left[tl] == 0 and tl != SOURCE:
                        alive[tl] = False
                        queue.append(tl)

    kill([z for z in range(2, count) if in_left[z] == 0 or out_left[z] == 0])
    paths: list[list[int]] = []
    expected = layered.sink_level
    search = Mdfs(count, start, targets, alive=alive)
    first = start[SOURCE]
    while alive[SOURCE] and alive[SINK]:
        search.reset()
        # dead successors of the source stay dead; skip them for good
        while first < start[SOURCE + 1] and not alive[targets[first]]:
            first += 1
        search.pos[SOURCE] = first
        path = search.run()
        if path is None:
            break
        if len(path) - 1 != expected:
            raise PhaseError(f"layered path of length {len(path) - 1}, expected {expected}")
        path = [unrolled.original(x) for x in path]
        nodes = [x >> 1 for x in path[1:-1]]
        if len(set(nodes)) != len(nodes):
            raise PhaseError("extracted path is not strongly simple")
        paths.append(path)
        kill([2 * c + side for v in nodes for c in unrolled.copies.get(v, ()) for side in (0, 1)])
    return paths


def solve_hk(g: Graph, initial: Matching | None = None, stats: dict | None = None,
             on_phase: Callable[[int, LayeredGraph, list[list[int]]], None] | None = None) -> Matching:
    """Maximum cardinality matching by phases of disjoint shortest augmentations."""
    mate = list((initial or empty_matching(g)).mate)
    phases = 0
    per_phase: list[int] = []
    lengths: list[int] = []
    while True:
        g_m = build_gm_from_mate(g, mate)
        layered = mbfs_layers(g_m)
        if layered.sink_level == UNDEF:
            break
        paths = extract_disjoint_paths(layered)
        if not paths:
            raise PhaseError("sink is leveled but no augmenting path was extracted")
        phases += 1
        if on_phase is not None:
            on_phase(phases, layered, paths)
        per_phase.append(len(paths))
        lengths.append(layered.sink_level)
        for path in paths:
            augment_in_place(mate, [x >> 1 for x in path[1:-1]])
    if stats is not None:
        stats["phases"] = phases
        stats["paths_per_phase"] = per_phase
        stats["path_lengths"] = lengths
        stats["phase_bound"] = 2 * math.ceil(math.sqrt(g.n)) + 2
    return matching_from_mate(g, mate)
