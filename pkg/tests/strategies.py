"""Hypothesis strategies: instances come from the seeded generators, so every
drawn metric keeps the generators' exact-comparison guarantees."""
from __future__ import annotations

import math

from hypothesis import strategies as st

from sdglab.instances import (
    gen_random_euclidean,
    gen_random_matrix_metric,
    gen_random_ranges,
)

seeds = st.integers(min_value=0, max_value=2**62)


@st.composite
def euclidean_metrics(draw, min_n=2, max_n=20):
    n = draw(st.integers(min_n, max_n))
    d = draw(st.sampled_from([1, 2, 3, 5]))
    p = draw(st.sampled_from([1.0, 2.0, math.inf]))
    return gen_random_euclidean(n, d, p, draw(seeds))


@st.composite
def matrix_metrics(draw, min_n=2, max_n=16):
    return gen_random_matrix_metric(draw(st.integers(min_n, max_n)), draw(seeds))


def metrics(min_n=2, max_n=20):
    return st.one_of(euclidean_metrics(min_n, max_n), matrix_metrics(min_n, min(max_n, 16)))


@st.composite
def metric_range_pairs(draw, min_n=2, max_n=20):
    m = draw(metrics(min_n, max_n))
    mode = draw(st.sampled_from(["uniform", "biased"]))
    return m, gen_random_ranges(m, mode, draw(seeds))
