"""Maximum matchings in general graphs via strongly simple path search.

The search kernels may be present as compiled extension modules next to their
Python sources. Set ``MDFSMATCH_PURE=1`` before the first import to load the
Python sources instead; :func:`backend` reports which one is active.
"""

from __future__ import annotations

import importlib.abc
import importlib.util
import os
import sys
from importlib.machinery import SourceFileLoader
from pathlib import Path

KERNELS = ("dsu", "reduction", "mdfs", "hk")
_HERE = Path(__file__).resolve().parent


class _SourceFirst(importlib.abc.MetaPathFinder):
    """Resolve the kernel modules to their ``.py`` files."""

    def find_spec(self, fullname, path=None, target=None):
        pkg, _, name = fullname.rpartition(".")
        if pkg != __name__ or name not in KERNELS:
            return None
        source = _HERE / f"{name}.py"
        if not source.exists():
            return None
        return importlib.util.spec_from_file_location(fullname, source, loader=SourceFileLoader(fullname, str(source)))


if os.environ.get("MDFSMATCH_PURE") == "1":
    sys.meta_path.insert(0, _SourceFirst())


def backend() -> str:
    """``"compiled"`` if the search kernel is an extension module, else ``"pure"``."""
    from . import mdfs

    return "pure" if mdfs.__file__.endswith(".py") else "compiled"


__all__ = ["backend"]
