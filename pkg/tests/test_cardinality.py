import random

import pytest
from hypothesis import given

from mdfsmatch.cardinality import solve_basic
from mdfsmatch.graph import Graph, empty_matching
from mdfsmatch.oracle import brute_max_cardinality, gen_random

from conftest import cycle_graph, path_graph, petersen
from strategies import graphs_with_matching


@pytest.mark.parametrize("g, size", [(path_graph(3), 1), (cycle_graph(5), 2), (petersen(), 5)])
def test_examples(g, size):
    assert len(solve_basic(g)) == size


def test_empty_graph():
    assert len(solve_basic(Graph.from_edges(3, []))) == 0


def test_random_graphs_up_to_twelve_nodes():
    rng = random.Random(12)
    for k in range(1000):
        n = rng.randint(1, 12)
        g = gen_random(n, rng.randint(0, n * (n - 1) // 2), seed=k)
        assert len(solve_basic(g)) == len(brute_max_cardinality(g)), g.edges


@given(graphs_with_matching(max_nodes=9))
def test_warm_start_reaches_the_same_size(gm):
    g, m0 = gm
    stats = {}
    m = solve_basic(g, initial=m0, stats=stats)
    best = len(brute_max_cardinality(g))
    assert len(m) == best
    # each augmentation adds exactly one edge
    assert stats["augmentations"] == best - len(m0) <= g.n // 2 - len(m0)


def test_trace_reports_search_events():
    lines = []
    solve_basic(path_graph(2), trace=lines.append)
    assert lines[0] == "push s" and "push t" in lines


def test_initial_matching_is_not_mutated():
    g = path_graph(4)
    m0 = empty_matching(g)
    solve_basic(g, initial=m0)
    assert len(m0) == 0
