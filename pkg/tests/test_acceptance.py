"""Acceptance suite: one test per criterion, reported as PASS/FAIL lines in the
terminal summary (see conftest.py)."""

from __future__ import annotations

import math
import random
import subprocess
import sys
import time

import networkx as nx
import pytest

from conftest import connected_graphs, graph_from_nx
from mdfsmatch.cardinality import solve_basic
from mdfsmatch.dsu import DisjointSets
from mdfsmatch.graph import emit_dimacs, validate_matching
from mdfsmatch.hk import UNDEF, mbfs_layers, solve_hk
from mdfsmatch.mdfs import find_augmenting_path
from mdfsmatch.oracle import (
    all_matchings,
    brute_max_cardinality,
    brute_max_weight,
    brute_st_strongly_simple,
    gen_random,
    strongly_simple_distances,
)
from mdfsmatch.reduction import SINK, build_gm, build_gm_from_mate, is_strongly_simple, lift_path
from mdfsmatch.weighted import solve_weighted, verify_certificate


@pytest.mark.criterion(1)
def test_cardinality_exhaustive_connected_up_to_8():
    graphs = connected_graphs(8)
    assert len(graphs) == 1 + 1 + 2 + 6 + 21 + 112 + 853 + 11117
    mismatches = []
    for g in graphs:
        want = len(brute_max_cardinality(g))
        basic = len(solve_basic(g))
        hk = len(solve_hk(g))
        if not basic == hk == want:
            mismatches.append((g.edges, basic, hk, want))
    assert mismatches == []


@pytest.mark.criterion(2)
def test_search_finds_path_iff_one_exists_up_to_7():
    pairs = 0
    failures = []
    for h in nx.graph_atlas_g()[1:]:
        g = graph_from_nx(h)
        for idx in all_matchings(g):
            pairs += 1
            m = validate_matching(g, idx)
            g_m = build_gm(g, m)
            path = find_augmenting_path(g_m)
            exists = brute_st_strongly_simple(g_m) is not None
            if (path is not None) != exists:
                failures.append(("existence", g.edges, m.pairs(g)))
                continue
            if path is None:
                continue
            if not is_strongly_simple(g_m, path):
                failures.append(("not strongly simple", g.edges, m.pairs(g), path))
                continue
            nodes = lift_path(g_m, path)
            free_ends = m.is_free(nodes[0]) and m.is_free(nodes[-1])
            if not free_ends or len(set(nodes)) != len(nodes):
                failures.append(("bad lift", g.edges, m.pairs(g), nodes))
    assert pairs == 57_977
    assert failures == []


@pytest.mark.criterion(3)
def test_phase_bound_on_random_graphs():
    t0 = time.perf_counter()
    over = []
    for i in range(200):
        n = 10 * (i + 1)
        g = gen_random(n, 4 * n, seed=3000 + i)
        stats = {}
        m = solve_hk(g, stats=stats)
        bound = 2 * math.ceil(math.sqrt(n)) + 2
        assert stats["phase_bound"] == bound
        if stats["phases"] > bound:
            over.append((n, stats["phases"], bound))
        # maximum by Berge: no augmenting path is left
        assert find_augmenting_path(build_gm(g, m)) is None
    elapsed = time.perf_counter() - t0
    assert over == []
    assert elapsed < 60.0, f"{elapsed:.1f}s"


def _random_matching(g, rng):
    order = list(range(len(g.edges)))
    rng.shuffle(order)
    used, chosen = set(), []
    keep = rng.random()
    for idx in order:
        u, v, _ = g.edges[idx]
        if u in used or v in used or rng.random() > keep:
            continue
        used |= {u, v}
        chosen.append(idx)
    return validate_matching(g, chosen)


@pytest.mark.criterion(4)
def test_layer_levels_match_brute_force_distances():
    rng = random.Random(4)
    problems = []
    for k in range(500):
        n = rng.randint(2, 8)
        g = gen_random(n, rng.randint(1, n * (n - 1) // 2), seed=4000 + k)
        m = _random_matching(g, rng)
        g_m = build_gm_from_mate(g, m.mate)
        truth = strongly_simple_distances(g_m)
        want = [truth[x][0] if x in truth else UNDEF for x in range(g_m.label_count)]
        full = mbfs_layers(g_m, full=True)
        if full.level != want:
            problems.append(("full", k))
        layered = mbfs_layers(g_m)
        if layered.sink_level != want[SINK]:
            problems.append(("sink", k))
        for x in range(g_m.label_count):
            lv = layered.level[x]
            if x == SINK or lv == UNDEF:
                continue
            if lv != want[x]:
                problems.append(("level", k, x))
            if x >= 2 and lv % 2 != x % 2:
                problems.append(("parity", k, x))
        for v in range(1, n + 1):
            first, second = full.first_level(v), full.second_level(v)
            if second == UNDEF:
                continue
            if not first < second or (first + second) % 2 != 1:
                problems.append(("first/second", k, v))
    assert problems == []


@pytest.fixture(scope="module")
def weighted_suite():
    rng = random.Random(5)
    runs = []
    for k in range(500):
        n = rng.randint(2, 10)
        g = gen_random(n, rng.randint(1, n * (n - 1) // 2), seed=5000 + k, max_weight=20)
        stats = {}
        m, state = solve_weighted(g, stats=stats)
        runs.append((g, m, state, stats))
    return runs


@pytest.mark.criterion(5)
def test_weighted_optimum_equals_brute_force(weighted_suite):
    wrong = [(g.edges, m.weight(g), brute_max_weight(g)[1])
             for g, m, _, _ in weighted_suite if m.weight(g) != brute_max_weight(g)[1]]
    assert wrong == []


@pytest.mark.criterion(6)
def test_certificate_identity_on_every_output(weighted_suite):
    rejected = []
    for g, m, state, _ in weighted_suite:
        ok, problems = verify_certificate(g, m, state)
        if not ok:
            rejected.append((g.edges, problems))
    assert rejected == []


@pytest.mark.criterion(7)
def test_dual_change_budget(weighted_suite):
    over = [(g.n, s["dual_changes"]) for g, _, _, s in weighted_suite if s["max_dual_changes"] > 3 * g.n]
    assert all(s["dual_change_budget"] == 3 * g.n for g, _, _, s in weighted_suite)
    assert over == []


@pytest.mark.criterion(8)
def test_union_find_against_naive_model():
    n = 256
    rng = random.Random(8)
    dsu = DisjointSets()
    for e in range(n):
        dsu.make_set(e)
    model = {e: frozenset([e]) for e in range(n)}
    undo: list[tuple[object, dict]] = []
    bound = n * (math.ceil(math.log2(n)) + 1)
    for _ in range(10_000):
        op = rng.random()
        if op < 0.45:
            x = rng.randrange(n)
            assert frozenset(dsu.find(x).members) == model[x]
        elif op < 0.75:
            x, y = rng.randrange(n), rng.randrange(n)
            if model[x] == model[y]:
                continue
            merged = model[x] | model[y]
            undo.append((dsu.union(dsu.find(x), dsu.find(y)), {e: model[e] for e in merged}))
            for e in merged:
                model[e] = merged
        elif undo:
            token, before = undo.pop()
            dsu.deunion(token)
            model.update(before)
        live = sum(dsu.history_length(e) for e in range(n))
        assert live <= bound
    for x in range(n):
        assert frozenset(dsu.find(x).members) == model[x]
    assert sorted(sorted(s.members) for s in dsu.sets()) == sorted(sorted(s) for s in set(model.values()))

    # union-only build: cumulative entries stay within the bound
    fresh = DisjointSets()
    for e in range(n):
        fresh.make_set(e)
    roots = list(range(n))
    while len(roots) > 1:
        a, b = rng.sample(roots, 2)
        fresh.union(fresh.find(a), fresh.find(b))
        roots.remove(b)
    assert fresh.history_entries <= bound


def _timed_hk(n, m, seed):
    g = gen_random(n, m, seed)
    t0 = time.perf_counter()
    solve_hk(g)
    return time.perf_counter() - t0


@pytest.mark.slow
@pytest.mark.criterion(9)
def test_performance_smoke():
    times = [_timed_hk(n, 5 * n, seed=9) for n in (25_000, 50_000, 100_000)]
    assert times[2] < 60.0, f"n=1e5 took {times[2]:.1f}s"
    ratios = [b / a for a, b in zip(times, times[1:])]
    assert all(r < 3.0 for r in ratios), f"times {times}"


def _cli(*args, stdin=None):
    return subprocess.run([sys.executable, "-m", "mdfsmatch.cli", *args],
                          input=stdin, capture_output=True, check=False)


@pytest.mark.criterion(10)
def test_every_solver_is_deterministic(tmp_path):
    for seed in range(5):
        g = gen_random(30, 80, seed=10 + seed, max_weight=9)
        path = tmp_path / f"g{seed}.dimacs"
        path.write_text(emit_dimacs(g))
        for flags in (["--algo", "basic"], ["--algo", "hk"], ["--weighted"]):
            runs = []
            for rep in range(2):
                extra = []
                if "--weighted" in flags:
                    extra = ["--cert", str(tmp_path / f"c{seed}_{rep}.txt")]
                out = _cli("solve", *flags, *extra, "--stats", str(path))
                assert out.returncode == 0, out.stderr
                runs.append((out.stdout, out.stderr))
            assert runs[0] == runs[1], flags
            if "--weighted" in flags:
                assert (tmp_path / f"c{seed}_0.txt").read_bytes() == (tmp_path / f"c{seed}_1.txt").read_bytes()
    gens = [_cli("gen", "--nodes", "50", "--edges", "120", "--seed", "3", "--max-weight", "7").stdout for _ in range(2)]
    assert gens[0] == gens[1] and gens[0]
