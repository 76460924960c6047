"""Optional compiled kernels.

The search kernels are plain Python modules that Cython can compile unchanged.
When Cython or a C compiler is missing, or MDFSMATCH_NO_EXT=1 is set, the
package installs as pure Python and imports the same modules from source.
"""

import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext

KERNELS = ["dsu", "reduction", "mdfs", "hk"]


class OptionalBuildExt(build_ext):
    """Build the kernels if possible; never fail the install over them."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing or broken
            sys.stderr.write(f"mdfsmatch: compiled kernels skipped ({exc})\n")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            sys.stderr.write(f"mdfsmatch: could not compile {ext.name} ({exc})\n")


def extensions():
    if os.environ.get("MDFSMATCH_NO_EXT") == "1":
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    sources = [os.path.join("src", "mdfsmatch", f"{name}.py") for name in KERNELS]
    return cythonize(
        sources,
        compiler_directives={"language_level": 3, "binding": True},
        quiet=True,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
