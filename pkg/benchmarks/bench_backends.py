"""Time the compiled and pure-Python kernels on the same instances.

    python3 benchmarks/bench_backends.py [--sizes 2000,10000,50000] [--algo hk]

Each measurement runs ``mdfsmatch bench`` in a fresh interpreter so the
backend switch takes effect; the reported time is the solver wall time only.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import tempfile
from pathlib import Path

from mdfsmatch.graph import emit_dimacs
from mdfsmatch.oracle import gen_random


def run_bench(path: Path, algo: str, pure: bool) -> dict[str, str]:
    env = dict(os.environ, MDFSMATCH_PURE="1" if pure else "0")
    out = subprocess.run(
        [sys.executable, "-m", "mdfsmatch.cli", "bench", "--algo", algo, str(path)],
        capture_output=True, text=True, env=env, check=True,
    ).stdout
    return dict(line.split("=", 1) for line in out.splitlines())


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="2000,10000,50000")
    parser.add_argument("--algo", default="hk", choices=["basic", "hk", "weighted"])
    parser.add_argument("--density", type=int, default=5, help="edges per node")
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    print(f"{'n':>8} {'m':>8} {'compiled ms':>12} {'pure ms':>10} {'speedup':>8}")
    with tempfile.TemporaryDirectory() as tmp:
        for n in map(int, args.sizes.split(",")):
            m = min(args.density * n, n * (n - 1) // 2)
            max_weight = 100 if args.algo == "weighted" else 1
            path = Path(tmp) / f"g{n}.dimacs"
            path.write_text(emit_dimacs(gen_random(n, m, args.seed, max_weight)))
            fast = run_bench(path, args.algo, pure=False)
            slow = run_bench(path, args.algo, pure=True)
            if fast["backend"] != "compiled":
                print("compiled kernels not built; run: python3 setup.py build_ext --inplace", file=sys.stderr)
            if fast["cardinality"] != slow["cardinality"] or fast["weight"] != slow["weight"]:
                raise SystemExit(f"backends disagree at n={n}")
            a, b = float(fast["wall_ms"]), float(slow["wall_ms"])
            print(f"{n:>8} {m:>8} {a:>12.1f} {b:>10.1f} {b / a:>7.2f}x")


if __name__ == "__main__":
    main()
