"""Maximum-cardinality matching by repeated augmentation."""

from __future__ import annotations

from typing import Callable

from .graph import Graph, Matching, augment_in_place, empty_matching, matching_from_mate
from .mdfs import find_augmenting_path
from .reduction import build_gm_from_mate, lift_path


def solve_basic(
    g: Graph,
    initial: Matching | None = None,
    stats: dict | None = None,
    trace: Callable[[str], None] | None = None,
) -> Matching:
    """Augment along one search path at a time until none is left.

    The label graph is rebuilt after every augmentation.
    """
    if initial is None:
        initial = empty_matching(g)
    mate = list(initial.mate)
    augmentations = 0
    while True:
        g_m = build_gm_from_mate(g, mate)
        path = find_augmenting_path(g_m, trace=trace)
        if path is None:
            break
        augment_in_place(mate, lift_path(g_m, path))
        augmentations += 1
    if stats is not None:
        stats["augmentations"] = augmentations
    return matching_from_mate(g, mate)
