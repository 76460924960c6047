"""The compiled kernels and their Python sources must behave identically."""

import os
import subprocess
import sys

import pytest

from mdfsmatch.graph import emit_dimacs
from mdfsmatch.oracle import gen_random


def _cli(pure, *args):
    env = dict(os.environ)
    env.pop("MDFSMATCH_PURE", None)
    if pure:
        env["MDFSMATCH_PURE"] = "1"
    return subprocess.run([sys.executable, "-m", "mdfsmatch.cli", *args], capture_output=True, text=True, env=env)


def _backend(pure):
    env = dict(os.environ, MDFSMATCH_PURE="1" if pure else "0")
    code = "import mdfsmatch; print(mdfsmatch.backend())"
    return subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env).stdout.strip()


def test_pure_switch_loads_sources():
    assert _backend(pure=True) == "pure"


def test_compiled_backend_present():
    if _backend(pure=False) != "compiled":
        pytest.skip("compiled kernels not built")


@pytest.mark.parametrize("flags", [["--algo", "basic"], ["--algo", "hk"], ["--weighted"]])
def test_identical_output(tmp_path, flags):
    if _backend(pure=False) != "compiled":
        pytest.skip("compiled kernels not built")
    for seed in range(3):
        path = tmp_path / f"g{seed}.dimacs"
        path.write_text(emit_dimacs(gen_random(60, 150, seed=seed, max_weight=12)))
        runs = [_cli(pure, "solve", *flags, "--trace", str(path)) for pure in (False, True)]
        assert all(r.returncode == 0 for r in runs)
        assert runs[0].stdout == runs[1].stdout
        assert runs[0].stderr == runs[1].stderr
