import math

import numpy as np
import pytest

from fourcycles.baseline import baseline_probability, edge_sampling_estimate, edge_sampling_run
from fourcycles.generators import gen_gnp, gen_onion, gen_overlap
from fourcycles.graph import exact_four_cycle_count
from fourcycles.stream import EdgeStream


def test_probability():
    assert baseline_probability(1000) == pytest.approx(0.1)
    assert baseline_probability(8, c=5) == 1.0
    with pytest.raises(ValueError):
        baseline_probability(0)


def test_empty_graph():
    assert edge_sampling_estimate(EdgeStream.from_edges([]), 10) == 0.0


@pytest.mark.parametrize("g", [gen_onion(7), gen_overlap(4, 5), gen_gnp(14, 0.4, 1)])
def test_saturated_is_exact(g):
    T = exact_four_cycle_count(g)
    res = edge_sampling_run(EdgeStream.from_graph(g), max(T, 1), seed=3, c=100.0)
    assert res.p == 1.0
    assert res.estimate == T
    assert res.paths == 4 * T


def test_unbiased_small():
    g = gen_overlap(5, 5)
    s = EdgeStream.from_graph(g)
    est = np.array([edge_sampling_estimate(s, 100, seed=i, c=2.0) for i in range(3000)])
    se = est.std(ddof=1) / math.sqrt(len(est))
    assert abs(est.mean() - 100) <= 3 * se


def test_space_is_the_sample():
    g = gen_overlap(8, 8)
    res = edge_sampling_run(EdgeStream.from_graph(g), 784, seed=1)
    assert res.meter["peak_edges"] == res.meter["by_store"]["sample"]
