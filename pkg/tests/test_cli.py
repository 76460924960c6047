import subprocess
import sys

import pytest

from mdfsmatch.cli import EXIT_INPUT, EXIT_OK, EXIT_REJECTED, main
from mdfsmatch.graph import emit_dimacs, parse_dimacs, parse_matching
from mdfsmatch.oracle import brute_max_cardinality, brute_max_weight, gen_random

P3_TEXT = "p edge 3 2\ne 1 2\ne 2 3\n"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def p3(tmp_path):
    path = tmp_path / "p3.dimacs"
    path.write_text(P3_TEXT)
    return path


def test_solve_p3(capsys, p3):
    for algo in ("hk", "basic"):
        code, out, _ = run(capsys, "solve", "--cardinality", "--algo", algo, str(p3))
        assert code == EXIT_OK
        assert out == "s 1 1\nm 1 2\n"


def test_verify_accepts_and_rejects(capsys, p3, tmp_path):
    good = tmp_path / "good.txt"
    good.write_text("s 1 1\nm 1 2\n")
    code, out, _ = run(capsys, "verify", str(p3), "--matching", str(good))
    assert code == EXIT_OK and "valid matching of 1 edges" in out
    bad = tmp_path / "bad.txt"
    bad.write_text("m 1 2\nm 2 3\n")
    code, _, err = run(capsys, "verify", str(p3), "--matching", str(bad))
    assert code == EXIT_REJECTED and "invalid matching" in err
    missing = tmp_path / "missing.txt"
    missing.write_text("m 1 3\n")
    assert run(capsys, "verify", str(p3), "--matching", str(missing))[0] == EXIT_REJECTED


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--nope", "x"],
        ["solve", "/definitely/not/here.dimacs"],
        ["frobnicate"],
        ["gen", "--nodes", "5", "--edges", "11", "--seed", "0"],
        ["solve", "--algo", "quantum", "x"],
    ],
)
def test_input_errors_exit_one(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_INPUT


def test_malformed_graph_reports_line(capsys, tmp_path):
    path = tmp_path / "bad.dimacs"
    path.write_text("p edge 2 1\ne 1 5\n")
    code, _, err = run(capsys, "solve", str(path))
    assert code == EXIT_INPUT and "line 2" in err


def test_cert_requires_weighted(capsys, p3, tmp_path):
    assert run(capsys, "solve", "--cert", str(tmp_path / "c"), str(p3))[0] == EXIT_INPUT


def test_zero_weight_is_an_input_error(capsys, tmp_path):
    path = tmp_path / "zero.dimacs"
    path.write_text("p edge 2 1\ne 1 2 0\n")
    assert run(capsys, "solve", "--weighted", str(path))[0] == EXIT_INPUT


def test_generated_weighted_instances(capsys, tmp_path):
    for seed in range(8):
        code, text, _ = run(capsys, "gen", "--nodes", "10", "--edges", "22", "--seed", str(seed), "--max-weight", "9")
        assert code == EXIT_OK
        g = parse_dimacs(text)
        gpath = tmp_path / f"g{seed}.dimacs"
        gpath.write_text(text)
        cert = tmp_path / f"c{seed}.txt"
        code, out, _ = run(capsys, "solve", "--weighted", "--cert", str(cert), str(gpath))
        assert code == EXIT_OK
        m = parse_matching(g, out)
        assert m.weight(g) == brute_max_weight(g)[1]
        mpath = tmp_path / f"m{seed}.txt"
        mpath.write_text(out)
        code, out, _ = run(capsys, "verify", str(gpath), "--matching", str(mpath), "--cert", str(cert))
        assert code == EXIT_OK and out.strip() == f"optimal weight {m.weight(g)}"


def test_verify_with_cert_rejects_suboptimal(capsys, tmp_path):
    gpath = tmp_path / "g.dimacs"
    gpath.write_text("p edge 3 2\ne 1 2 5\ne 2 3 3\n")
    cert = tmp_path / "c.txt"
    assert run(capsys, "solve", "--weighted", "--cert", str(cert), str(gpath))[0] == EXIT_OK
    worse = tmp_path / "m.txt"
    worse.write_text("m 2 3\n")
    code, _, err = run(capsys, "verify", str(gpath), "--matching", str(worse), "--cert", str(cert))
    assert code == EXIT_REJECTED and err


def test_cardinality_on_generated_graphs(capsys, tmp_path):
    for seed in range(8):
        g = gen_random(12, 20, seed=seed)
        path = tmp_path / "g.dimacs"
        path.write_text(emit_dimacs(g))
        _, out, _ = run(capsys, "solve", str(path))
        assert len(parse_matching(g, out)) == len(brute_max_cardinality(g))


def test_dot_output(capsys, p3, tmp_path):
    dot = tmp_path / "g.dot"
    assert run(capsys, "solve", "--dot", str(dot), str(p3))[0] == EXIT_OK
    text = dot.read_text()
    assert text.startswith("digraph") and '"s"' in text and '"t"' in text


def test_stats_and_trace_go_to_stderr(capsys, p3):
    code, out, err = run(capsys, "solve", "--stats", "--trace", str(p3))
    assert code == EXIT_OK and out.startswith("s 1 1")
    assert "phases=1" in err and "cardinality=1" in err


def test_bench_reports_backend(capsys, p3):
    for algo in ("basic", "hk", "weighted"):
        code, out, _ = run(capsys, "bench", "--algo", algo, str(p3))
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] in ("backend=compiled", "backend=pure")
        assert "cardinality=1" in lines and any(l.startswith("wall_ms=") for l in lines)


def test_module_entry_point_exit_codes(p3):
    ok = subprocess.run([sys.executable, "-m", "mdfsmatch.cli", "solve", str(p3)], capture_output=True, text=True)
    assert ok.returncode == EXIT_OK and ok.stdout.startswith("s 1 1")
    bad = subprocess.run([sys.executable, "-m", "mdfsmatch.cli", "solve", "--bogus"], capture_output=True)
    assert bad.returncode == EXIT_INPUT


def test_gen_triangle_piped_to_weighted(capsys, tmp_path):
    code, text, _ = run(capsys, "gen", "--nodes", "3", "--edges", "3", "--seed", "7")
    assert code == EXIT_OK
    g = parse_dimacs(text)
    path = tmp_path / "t.dimacs"
    path.write_text(text)
    _, out, _ = run(capsys, "solve", "--weighted", str(path))
    assert parse_matching(g, out).weight(g) == brute_max_weight(g)[1] == 1


def test_verify_accepts_every_solve_output(capsys, tmp_path):
    gpath, mpath = tmp_path / "g.dimacs", tmp_path / "m.txt"
    modes = (["--algo", "basic"], ["--algo", "hk"], ["--weighted"])
    for seed in range(1000):
        n = 2 + seed % 19
        m = (seed * 7) % (n * (n - 1) // 2 + 1)
        code, text, _ = run(capsys, "gen", "--nodes", str(n), "--edges", str(m), "--seed", str(seed), "--max-weight", "6")
        assert code == EXIT_OK
        gpath.write_text(text)
        code, out, _ = run(capsys, "solve", *modes[seed % 3], str(gpath))
        assert code == EXIT_OK
        mpath.write_text(out)
        assert run(capsys, "verify", str(gpath), "--matching", str(mpath))[0] == EXIT_OK, seed
