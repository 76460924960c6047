"""Command-line front end.

Exit codes: 0 success, 1 unreadable or invalid input (including bad flags),
2 a matching or certificate failed verification.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import click

from .cardinality import solve_basic
from .graph import (
    Graph,
    MatchingError,
    ParseError,
    emit_dimacs,
    emit_matching,
    parse_dimacs,
    parse_matching,
)
from .hk import solve_hk
from .oracle import gen_random
from .reduction import build_gm, label_name, to_dot
from .weighted import (
    WeightError,
    emit_certificate,
    parse_certificate,
    solve_weighted,
    verify_certificate,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_REJECTED = 2

ALGORITHMS = ("basic", "hk", "weighted")


@dataclass
class RunStats:
    algorithm: str
    n: int
    m: int
    cardinality: int = 0
    weight: int = 0
    augmentations: int | None = None
    phases: int | None = None
    phase_bound: int | None = None
    paths_per_phase: list[int] = field(default_factory=list)
    path_lengths: list[int] = field(default_factory=list)
    dual_changes: list[int] = field(default_factory=list)
    dual_change_budget: int | None = None
    wall_ms: float | None = None

    def lines(self) -> list[str]:
        out = []
        for key, value in self.__dict__.items():
            if value is None or value == []:
                continue
            if isinstance(value, list):
                value = ",".join(map(str, value))
            elif isinstance(value, float):
                value = f"{value:.3f}"
            out.append(f"{key}={value}")
        return out


class InputError(Exception):
    """Bad input file or flag combination; maps to exit code 1."""


def _read_graph(path: str) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_dimacs(text)
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _run(g: Graph, algo: str, trace=None):
    """Solve with ``algo``; returns (matching, stats, dual state or None)."""
    raw: dict = {}
    state = None
    if algo == "basic":
        m = solve_basic(g, stats=raw, trace=trace)
    elif algo == "hk":
        on_phase = None
        if trace is not None:

            def on_phase(index, layered, paths):
                trace(f"phase {index} length {layered.sink_level} paths {len(paths)}")
                for p in paths:
                    trace("  " + " ".join(label_name(x) for x in p))

        m = solve_hk(g, stats=raw, on_phase=on_phase)
    elif algo == "weighted":
        m, state = solve_weighted(g, stats=raw, trace=trace)
    else:
        raise InputError(f"unknown algorithm {algo!r}")
    stats = RunStats(algo, g.n, g.m, len(m), m.weight(g))
    stats.augmentations = raw.get("augmentations")
    stats.phases = raw.get("phases")
    stats.phase_bound = raw.get("phase_bound")
    stats.paths_per_phase = raw.get("paths_per_phase", [])
    stats.path_lengths = raw.get("path_lengths", [])
    stats.dual_changes = raw.get("dual_changes", [])
    stats.dual_change_budget = raw.get("dual_change_budget")
    return m, stats, state


@click.group()
def cli() -> None:
    """Maximum matchings in general graphs."""


@cli.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--cardinality", "mode", flag_value="cardinality", default=True, help="Maximum cardinality (default).")
@click.option("--weighted", "mode", flag_value="weighted", help="Maximum weight.")
@click.option("--algo", type=click.Choice(["basic", "hk"]), default="hk", show_default=True,
              help="Cardinality algorithm.")
@click.option("--cert", "cert_out", type=click.Path(dir_okay=False), help="Write the dual certificate here (weighted).")
@click.option("--dot", "dot_out", type=click.Path(dir_okay=False), help="Write the final label graph as DOT.")
@click.option("--stats", "show_stats", is_flag=True, help="Print run statistics to stderr.")
@click.option("--trace", "show_trace", is_flag=True, help="Print search events to stderr.")
def solve(file, mode, algo, cert_out, dot_out, show_stats, show_trace):
    """Solve FILE (DIMACS edge format) and print the matching."""
    g = _read_graph(file)
    if cert_out and mode != "weighted":
        raise InputError("--cert needs --weighted")
    trace = (lambda line: click.echo(line, err=True)) if show_trace else None
    try:
        m, stats, state = _run(g, "weighted" if mode == "weighted" else algo, trace)
    except WeightError as exc:
        raise InputError(str(exc)) from None
    click.echo(emit_matching(g, m), nl=False)
    if cert_out:
        Path(cert_out).write_text(emit_certificate(state))
    if dot_out:
        Path(dot_out).write_text(to_dot(build_gm(g, m)))
    if show_stats:
        for line in stats.lines():
            click.echo(line, err=True)


@cli.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--matching", "matching_file", required=True, type=click.Path(dir_okay=False))
@click.option("--cert", "cert_file", type=click.Path(dir_okay=False), help="Also prove optimality with this certificate.")
def verify(file, matching_file, cert_file):
    """Check that a matching is valid for FILE, and optimal given a certificate."""
    g = _read_graph(file)
    try:
        m_text = Path(matching_file).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {matching_file}: {exc.strerror}") from None
    try:
        m = parse_matching(g, m_text)
    except MatchingError as exc:
        click.echo(f"invalid matching: {exc}", err=True)
        sys.exit(EXIT_REJECTED)
    if cert_file:
        try:
            cert = parse_certificate(g, Path(cert_file).read_text())
        except OSError as exc:
            raise InputError(f"cannot read {cert_file}: {exc.strerror}") from None
        except ParseError as exc:
            raise InputError(f"{cert_file}: {exc}") from None
        ok, problems = verify_certificate(g, m, cert)
        if not ok:
            for p in problems:
                click.echo(p, err=True)
            sys.exit(EXIT_REJECTED)
        click.echo(f"optimal weight {m.weight(g)}")
    else:
        click.echo(f"valid matching of {len(m)} edges, weight {m.weight(g)}")


@cli.command()
@click.option("--nodes", type=int, required=True)
@click.option("--edges", type=int, required=True)
@click.option("--seed", type=int, required=True)
@click.option("--max-weight", type=int, default=1, show_default=True)
def gen(nodes, edges, seed, max_weight):
    """Print a random simple graph in DIMACS edge format."""
    try:
        g = gen_random(nodes, edges, seed, max_weight)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    click.echo(emit_dimacs(g))


@cli.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--algo", type=click.Choice(ALGORITHMS), default="hk", show_default=True)
def bench(file, algo):
    """Run one solver on FILE and print its statistics as key=value lines."""
    g = _read_graph(file)
    t0 = time.perf_counter()
    try:
        _, stats, _ = _run(g, algo)
    except WeightError as exc:
        raise InputError(str(exc)) from None
    stats.wall_ms = (time.perf_counter() - t0) * 1000.0
    from . import backend

    click.echo(f"backend={backend()}")
    for line in stats.lines():
        click.echo(line)


def main(argv: list[str] | None = None) -> int:
    """Entry point with the fixed exit-code contract."""
    try:
        cli.main(args=argv, prog_name="mdfsmatch", standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return EXIT_INPUT
    except click.Abort:
        return EXIT_INPUT
    except InputError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_INPUT
    except SystemExit as exc:
        return int(exc.code or 0)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
