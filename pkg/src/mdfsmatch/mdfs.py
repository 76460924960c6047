"""Modified depth-first search for strongly simple source-to-sink paths.

The search walks the label graph like an ordinary depth-first search, but it
never pushes an A label while the node's B label is on the stack. Such an arc
is parked as a *weak back edge*. When a B label is popped and its A partner was
never pushed, a backward walk over the search tree collects every A label that
can reach that partner without passing its B label; those A labels share a
deferred destination (``defer_target``) that is pushed the next time the search
arrives at one of them from a fresh direction. Path recovery replays the
recorded non-tree arcs block by block.

Pops only move the top pointer to its parent; the tree is never torn down.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Sequence

from .dsu import DisjointSets
from .reduction import SINK, SOURCE, DirectedMatchingGraph, label_name

# arc categories, in the order of the case analysis
TREE_B = "tree-matched"  # case 1
BACK = "back"  # case 2.1
CROSS_ON_STACK = "cross"  # case 2.2.i
WEAK_BACK = "weak-back"  # case 2.2.ii
DEFERRED_PUSH = "deferred-push"  # case 2.3.i, destination pushed
FORWARD_OR_CROSS = "forward-cross"  # case 2.3.i, nothing pushed
TREE_A = "tree"  # case 2.3.ii

CATEGORIES = (TREE_B, BACK, CROSS_ON_STACK, WEAK_BACK, DEFERRED_PUSH, FORWARD_OR_CROSS, TREE_A)


class MdfsInvariantError(AssertionError):
    pass


class Mdfs:
    """One search over a label graph given in compressed rows.

    ``start``/``targets`` describe successors; ``alive`` optionally masks
    labels out (used by the phase solver after paths are removed). ``trace``
    receives one text line per event.
    """

    def __init__(
        self,
        label_count: int,
        start: Sequence[int],
        targets: Sequence[int],
        alive: Sequence[bool] | None = None,
        trace: Callable[[str], None] | None = None,
        check_invariants: bool = False,
    ) -> None:
        self.label_count = label_count
        self.start = start
        self.targets = targets
        self.alive = alive
        self.trace = trace
        self.check_invariants = check_invariants
        L = label_count
        self.parent = [-1] * L
        self.via = [-1] * L  # A label pushed through a deferred arc: the arc's head
        self.pushed = [False] * L
        self.in_stack = [False] * L
        self.pos = list(start[:L])
        self.weak_back: list[list[int] | None] = [None] * L  # R sets
        self.revisit: list[list[int] | None] = [None] * L  # E sets
        self.collected = [False] * L  # membership in L
        self.block_tail = [-1] * L  # P record: tail (a B label)
        self.block_head = [-1] * L  # P record: head (an A label)
        self.visit_stamp = [0] * L
        self.push_order = [0] * L
        self.push_count = 0
        self.stamp = 0
        self.dsets = DisjointSets()
        self.top = -1
        self.category_counts = dict.fromkeys(CATEGORIES, 0)
        self.arcs_considered = 0
        self.found: list[int] | None = None
        self.touched: list[int] = []  # labels whose per-label state changed

    def reset(self) -> None:
        """Forget the previous search in time proportional to what it touched."""
        start = self.start
        for x in self.touched:
            self.parent[x] = -1
            self.via[x] = -1
            self.pushed[x] = False
            self.in_stack[x] = False
            self.pos[x] = start[x]
            self.weak_back[x] = None
            self.revisit[x] = None
            self.collected[x] = False
            self.block_tail[x] = -1
            self.block_head[x] = -1
        self.touched = []
        self.dsets = DisjointSets()
        self.top = -1
        self.found = None

    # -- public -------------------------------------------------------------

    def run(self) -> list[int] | None:
        """Search from the source. Returns a label path s..t or None."""
        self._push(SOURCE, -1)
        return self._loop()

    def defer_target(self, a_label: int) -> int:
        """The A label currently reachable through ``a_label``, or -1."""
        if not self.collected[a_label]:
            return -1
        base = self.dsets.find(a_label).payload
        return -1 if self.pushed[base] else base

    # -- core ---------------------------------------------------------------

    def _push(self, x: int, parent: int) -> None:
        self.parent[x] = parent
        self.touched.append(x)
        self.push_count += 1
        self.push_order[x] = self.push_count
        self.pushed[x] = True
        self.in_stack[x] = True
        self.top = x
        if self.trace is not None:
            self.trace(f"push {label_name(x)}")

    def _pop(self, x: int) -> None:
        self.in_stack[x] = False
        self.top = self.parent[x]
        if self.trace is not None:
            self.trace(f"pop {label_name(x)}")

    def _note(self, category: str, x: int, y: int) -> None:
        self.category_counts[category] += 1
        if self.trace is not None:
            self.trace(f"arc {label_name(x)} {label_name(y)} {category}")

    def _loop(self) -> list[int] | None:
        targets = self.targets
        end = self.start
        alive = self.alive
        pos = self.pos
        pushed = self.pushed
        in_stack = self.in_stack
        while self.top != -1:
            x = self.top
            if x == SINK:
                self.found = self.reconstruct()
                return self.found
            i = pos[x]
            if i < end[x + 1]:
                pos[x] = i + 1
                y = targets[i]
                if alive is not None and not alive[y]:
                    continue
                self.arcs_considered += 1
                if not x & 1:
                    # source or A label: the arc leads to a B label or the sink
                    self._note(TREE_B, x, y)
                    self._push(y, x)
                    continue
                wb = y ^ 1
                if in_stack[y]:
                    self._note(BACK, x, y)
                    self._add_revisit(y, x)
                elif in_stack[wb]:
                    if pushed[y]:
                        self._note(CROSS_ON_STACK, x, y)
                        self._add_revisit(y, x)
                    else:
                        self._note(WEAK_BACK, x, y)
                        r = self.weak_back[y]
                        if r is None:
                            self.weak_back[y] = [x]
                            self.touched.append(y)
                        else:
                            r.append(x)
                elif pushed[y]:
                    u = self.defer_target(y)
                    if u != -1:
                        self._note(DEFERRED_PUSH, x, y)
                        self.via[u] = y
                        self._push(u, x)
                    else:
                        self._note(FORWARD_OR_CROSS, x, y)
                        if not self.collected[y]:
                            self._add_revisit(y, x)
                else:
                    self._note(TREE_A, x, y)
                    self._push(y, x)
                continue
            # every arc of x considered
            if x & 1 and not pushed[x ^ 1]:
                self._collect(x)
            self._pop(x)
        return None

    def _add_revisit(self, a_label: int, b_label: int) -> None:
        e = self.revisit[a_label]
        if e is None:
            self.revisit[a_label] = [b_label]
            self.touched.append(a_label)
        else:
            e.append(b_label)

    # -- backward collection ------------------------------------------------

    def _collect(self, popped_b: int) -> None:
        """Gather the A labels that reach ``popped_b``'s partner while
        avoiding ``popped_b`` and give them that partner as deferred target."""
        target = popped_b ^ 1
        starts = self.weak_back[target]
        if not starts:
            return
        self.stamp += 1
        state = _CollectState(target, popped_b)
        # shallow tails first, so every label keeps its nearest exit
        order = self.push_order.__getitem__
        for qb in sorted(starts, key=order):
            self._walk(state, qb, target)
        queue = state.queue
        revisit = self.revisit
        stamp = self.stamp
        while queue:
            k = queue.popleft()
            e = revisit[k]
            if not e:
                continue
            for qb in sorted(e, key=order):
                if self.visit_stamp[qb] != stamp:
                    self._walk(state, qb, k)
        if self.check_invariants:
            self._check_after_collect()

    def _walk(self, state: "_CollectState", tail: int, head: int) -> None:
        # follow tree edges up from ``tail``; ``(tail, head)`` closes the block
        visit = self.visit_stamp
        stamp = self.stamp
        parent = self.parent
        collected = self.collected
        stop = state.stop
        node = tail
        while True:
            if node == stop or visit[node] == stamp:
                return
            visit[node] = stamp
            if not node & 1:
                if node == SOURCE:
                    raise MdfsInvariantError("backward walk escaped past the popped label")
                if collected[node]:
                    rec = self.dsets.find(node)
                    inner_base = rec.payload
                    state.absorb(self, rec)
                    node = inner_base ^ 1
                    continue
                collected[node] = True
                self.touched.append(node)
                self.block_tail[node] = tail
                self.block_head[node] = head
                state.add(self, node)
            node = parent[node]

    # -- path recovery ------------------------------------------------------

    def reconstruct(self) -> list[int]:
        """Rebuild the s..t path from the tree, expanding deferred arcs."""
        if self.top != SINK:
            raise MdfsInvariantError("reconstruction needs the sink on top")
        return self._unfold([], [(SINK, SOURCE)])

    def _chain(self, first: int, end: int) -> list[int]:
        chain = [first]
        while self.block_head[chain[-1]] != end:
            nxt = self.block_head[chain[-1]]
            if nxt == -1 or len(chain) > self.label_count:
                raise MdfsInvariantError("broken block chain")
            chain.append(nxt)
        return chain

    def _unfold(self, out: list[int], work: list[tuple[int, int]]) -> list[int]:
        # each work item walks parent links from its first label back to its
        # second; the output grows from the path's end toward its start
        parent = self.parent
        via = self.via
        limit = 4 * self.label_count * self.label_count + 16
        while work:
            cur, stop = work.pop()
            while True:
                out.append(cur)
                limit -= 1
                if limit < 0:
                    raise MdfsInvariantError("path recovery does not terminate")
                if cur == stop:
                    break
                w = via[cur]
                if w != -1:
                    work.append((parent[cur], stop))
                    for st in self._chain(w, cur):
                        work.append((self.block_tail[st], st))
                    break
                cur = parent[cur]
                if cur == -1:
                    raise MdfsInvariantError("fell off the search tree")
        out.reverse()
        return out

    # -- checks -------------------------------------------------------------

    def _check_after_collect(self) -> None:
        # at most one deferred target per A label holds by construction of
        # the set structure; check that every collected label has one set
        for a in range(2, self.label_count, 2):
            if self.collected[a] and a not in self.dsets:
                raise MdfsInvariantError(f"{label_name(a)} collected without a set")


class _CollectState:
    __slots__ = ("base", "stop", "current", "queue")

    def __init__(self, base: int, stop: int) -> None:
        self.base = base
        self.stop = stop
        self.current = None
        self.queue: deque[int] = deque()

    def add(self, search: Mdfs, a_label: int) -> None:
        ds = search.dsets
        rec = ds.make_set(a_label, payload=self.base)
        if self.current is None:
            self.current = rec
        else:
            self.current = ds.union(self.current, rec).larger
        if search.trace is not None:
            search.trace(f"collect {label_name(a_label)} into {label_name(self.base)}")
        self.queue.append(a_label)

    def absorb(self, search: Mdfs, rec) -> None:
        if rec is self.current:
            return
        ds = search.dsets
        if self.current is None:
            # adopt the inner set and retarget it
            rec.payload = self.base
            self.current = rec
        else:
            self.current = ds.union(self.current, rec, payload=self.base).larger
        if search.trace is not None:
            search.trace(f"merge into {label_name(self.base)}")


def find_augmenting_path(
    g_m: DirectedMatchingGraph,
    trace: Callable[[str], None] | None = None,
    check_invariants: bool = False,
) -> list[int] | None:
    """A strongly simple s..t label path of ``g_m``, or None if none exists."""
    search = Mdfs(g_m.label_count, g_m.start, g_m.targets, trace=trace, check_invariants=check_invariants)
    return search.run()
