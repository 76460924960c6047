"""Disjoint sets with the weighted union rule, constant-time find and undo.

Each element keeps a stack of pointers to the sets it has belonged to; the top
is its current set. A union pushes one pointer onto every element of the
smaller side, so an element's stack grows only when its set at least doubles.
Undoing a union pops exactly those pointers again. Undo is last-in first-out per
merged set, which is all the blossom bookkeeping needs.
"""

from __future__ import annotations

from typing import Any, Hashable


class DsuError(ValueError):
    pass


class SetRecord:
    """Handle of one set. ``name`` and ``payload`` are free for the caller."""

    __slots__ = ("name", "payload", "members", "alive", "_tokens")

    def __init__(self, name: Hashable, payload: Any, element: Hashable) -> None:
        self.name = name
        self.payload = payload
        self.members = [element]
        self.alive = True
        self._tokens: list[UnionToken] = []

    @property
    def size(self) -> int:
        return len(self.members)

    def __repr__(self) -> str:
        return f"SetRecord({self.name!r}, size={self.size})"


class UnionToken:
    __slots__ = ("larger", "smaller", "first", "second", "old_size", "old_name", "old_payload", "used")

    def __init__(self, larger, smaller, first, second, old_size, old_name, old_payload) -> None:
        self.larger = larger
        self.smaller = smaller
        self.first = first
        self.second = second
        self.old_size = old_size
        self.old_name = old_name
        self.old_payload = old_payload
        self.used = False


class DisjointSets:
    def __init__(self) -> None:
        self._stack: dict[Hashable, list[SetRecord]] = {}
        self._names: dict[Hashable, SetRecord] = {}
        self.history_entries = 0

    def __contains__(self, element: Hashable) -> bool:
        return element in self._stack

    def __len__(self) -> int:
        return len(self._stack)

    def make_set(self, element: Hashable, name: Hashable = None, payload: Any = None) -> SetRecord:
        """Insert ``element`` as a singleton. ``name`` defaults to the element."""
        if element in self._stack:
            raise DsuError(f"element {element!r} already inserted")
        if name is None:
            name = element
        if name in self._names:
            raise DsuError(f"set name {name!r} is already live")
        rec = SetRecord(name, payload, element)
        self._names[name] = rec
        self._stack[element] = [rec]
        self.history_entries += 1
        return rec

    def find(self, element: Hashable) -> SetRecord:
        try:
            return self._stack[element][-1]
        except KeyError:
            raise DsuError(f"unknown element {element!r}") from None

    def find_name(self, name: Hashable) -> SetRecord | None:
        return self._names.get(name)

    def history_length(self, element: Hashable) -> int:
        return len(self._stack[element])

    def union(self, a: SetRecord, b: SetRecord, name: Hashable = None, payload: Any = ...) -> UnionToken:
        """Merge ``b`` into ``a``. The result is named ``name`` (default: a's
        name) and carries ``payload`` (default: a's payload)."""
        if a is b:
            raise DsuError("cannot unite a set with itself")
        if not (a.alive and b.alive):
            raise DsuError("set handle is no longer live")
        if name is None:
            name = a.name
        if payload is ...:
            payload = a.payload
        larger, smaller = (a, b) if a.size >= b.size else (b, a)
        token = UnionToken(larger, smaller, a, b, larger.size, larger.name, larger.payload)
        stack = self._stack
        for e in smaller.members:
            stack[e].append(larger)
        self.history_entries += smaller.size
        larger.members.extend(smaller.members)
        smaller.alive = False
        del self._names[smaller.name]
        del self._names[larger.name]
        if name in self._names:
            # restore before failing so the structure stays consistent
            self._names[larger.name] = larger
            self._names[smaller.name] = smaller
            self._undo(token)
            raise DsuError(f"set name {name!r} is already live")
        larger.name = name
        larger.payload = payload
        self._names[name] = larger
        larger._tokens.append(token)
        return token

    def deunion(self, token: UnionToken) -> tuple[SetRecord, SetRecord]:
        """Undo ``token``'s union. Must be the latest union still applied to
        its merged set. Returns the two restored sets in their union order."""
        if token.used:
            raise DsuError("union token already reverted")
        larger = token.larger
        if not larger._tokens or larger._tokens[-1] is not token:
            raise DsuError("deunion must undo the most recent union of its set")
        larger._tokens.pop()
        token.used = True
        del self._names[larger.name]
        self._undo(token)
        self._names[larger.name] = larger
        self._names[token.smaller.name] = token.smaller
        return token.first, token.second

    def _undo(self, token: UnionToken) -> None:
        larger, smaller = token.larger, token.smaller
        stack = self._stack
        for e in smaller.members:
            stack[e].pop()
        del larger.members[token.old_size :]
        larger.name = token.old_name
        larger.payload = token.old_payload
        smaller.alive = True

    def sets(self) -> list[SetRecord]:
        return [rec for rec in self._names.values()]
