import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdglab.graph import WeightedGraph, complete_graph, kruskal_msf
from sdglab.hamiltonian import (
    approx_ham_path,
    exact_min_ham_path,
    ham_path,
    path_weight,
    shortcut_path,
)
from sdglab.instances import gen_chain_metric, gen_random_euclidean, gen_star_metric

import support
from strategies import metrics, seeds


def test_exact_chain_is_the_path():
    m = gen_chain_metric(4).metric
    h = exact_min_ham_path(m)
    assert h.order == (0, 1, 2, 3)
    assert h.weight == 3.0
    assert h.exact


def test_exact_star_matches_permutation_scan():
    m = gen_star_metric(4).metric
    h = exact_min_ham_path(m)
    order, weight = support.permutation_min_path(m.matrix)
    assert h.weight == weight
    assert h.weight == 4.0  # hub used internally: 1 + 1 + 2


def test_exact_matches_permutation_scan_random():
    for seed in range(6):
        m = gen_random_euclidean(7 + seed % 3, 2, 2.0, seed)
        h = exact_min_ham_path(m)
        _, weight = support.permutation_min_path(m.matrix)
        assert h.weight == weight


def test_exact_rejects_out_of_range():
    with pytest.raises(ValueError):
        exact_min_ham_path(gen_random_euclidean(2, 1, 2.0, 0).induce([0])[0])
    big = gen_random_euclidean(19, 1, 2.0, 0)
    with pytest.raises(ValueError):
        exact_min_ham_path(big)


def test_exact_on_graph_without_ham_path():
    claw = WeightedGraph(n=4, edges=((0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)))
    with pytest.raises(ValueError):
        exact_min_ham_path(claw)


def test_exact_on_line_graph():
    # forced to alternate between the endpoints and the middle points
    from sdglab.instances import gen_line_graph

    b = gen_line_graph(5, 1000.0, 1e-4)
    h = exact_min_ham_path(b.graph)
    assert sorted(h.order) == list(range(5))
    assert h.weight == path_weight(b.graph, h.order)


def test_approx_chain_preorder_is_the_path():
    m = gen_chain_metric(5).metric
    h = approx_ham_path(m)
    assert h.weight == 4.0
    assert not h.exact
    mst_w = kruskal_msf(complete_graph(m)).weight
    assert h.weight <= 2.0 * mst_w


def test_approx_two_points_is_the_edge():
    m = gen_random_euclidean(2, 2, 2.0, 5)
    h = approx_ham_path(m)
    assert h.weight == m.distance(0, 1)


def test_approx_bounded_on_random_l1():
    m = gen_random_euclidean(64, 2, 1.0, 123)
    h = approx_ham_path(m)
    mst_w = kruskal_msf(complete_graph(m)).weight
    assert mst_w <= h.weight <= 2.0 * mst_w


@given(metrics(min_n=2, max_n=16))
def test_approx_at_most_twice_mst(m):
    h = approx_ham_path(m)
    assert h.weight <= 2.0 * kruskal_msf(complete_graph(m)).weight


@given(metrics(min_n=2, max_n=9))
@settings(max_examples=20)
def test_exact_never_beaten_by_approx(m):
    assert exact_min_ham_path(m).weight <= approx_ham_path(m).weight


def test_shortcut_full_set_identity():
    m = gen_random_euclidean(8, 2, 2.0, 44)
    h = exact_min_ham_path(m)
    s = shortcut_path(m, h, range(8))
    assert s.order == h.order and s.weight == h.weight


def test_shortcut_chain_odd_vertices():
    m = gen_chain_metric(5).metric
    h = exact_min_ham_path(m)
    s = shortcut_path(m, h, [0, 2, 4])
    assert s.order == (0, 2, 4)
    assert s.weight == 4.0  # two hops of induced distance 2


@given(metrics(min_n=3, max_n=16), st.data())
def test_shortcut_never_increases_weight(m, data):
    h = approx_ham_path(m)
    subset = sorted(data.draw(st.sets(st.integers(0, m.n - 1), min_size=1, max_size=m.n)))
    s = shortcut_path(m, h, subset)
    assert s.weight <= h.weight


@given(metrics(min_n=4, max_n=14), st.data())
def test_shortcut_composes_over_nested_subsets(m, data):
    h = approx_ham_path(m)
    outer = sorted(data.draw(st.sets(st.integers(0, m.n - 1), min_size=2, max_size=m.n)))
    inner = sorted(data.draw(st.sets(st.sampled_from(outer), min_size=1, max_size=len(outer))))
    twice = shortcut_path(m, shortcut_path(m, h, outer), inner)
    once = shortcut_path(m, h, inner)
    assert twice.order == once.order and twice.weight == once.weight


def test_ham_path_auto_dispatch():
    small = gen_random_euclidean(10, 2, 2.0, 1)
    assert ham_path(small, mode="auto").exact
    large = gen_random_euclidean(20, 2, 2.0, 1)
    assert not ham_path(large, mode="auto").exact
    with pytest.raises(ValueError):
        ham_path(small, mode="nope")
