import math

import numpy as np
import pytest

from fourcycles.detect import (
    DetectParams,
    amplified_detection,
    default_runs,
    expected_pass1_edges,
    run_detection,
)
from fourcycles.generators import gen_cycle, gen_gnp, gen_onion, gen_overlap, gen_tree
from fourcycles.graph import is_four_cycle_of
from fourcycles.sampling import unsaturated_c1
from fourcycles.stream import EdgeStream


def desk(T, seed=0, **kw):
    return DetectParams(T, 0.25, unsaturated_c1(T, 0.25), seed, **kw)


def test_tree_never_detected():
    s = EdgeStream.from_graph(gen_tree(60, 1))
    p = DetectParams(1, 0.25, 50.0)
    assert not any(run_detection(s, p, seed=i).found for i in range(50))


def test_saturated_c4_found():
    g = gen_cycle(4)
    res = run_detection(EdgeStream.from_graph(g), DetectParams(1, 0.5, 10.0))
    assert res.saturated
    assert res.found and res.witness == (0, 1, 2, 3)


def test_witness_is_a_cycle():
    g = gen_gnp(25, 0.3, 2)
    s = EdgeStream.from_graph(g)
    p = desk(100)
    hits = 0
    for i in range(40):
        res = run_detection(s, p, seed=i)
        if res.found:
            hits += 1
            assert is_four_cycle_of(g, res.witness)
    assert hits > 0


def test_order_does_not_matter():
    g = gen_onion(20)
    p = desk(190)
    base = run_detection(EdgeStream.from_graph(g), p, seed=3, keep_collected=True)
    for order in range(1, 5):
        s = EdgeStream.from_graph(g, order_seed=order, per_pass_reshuffle=True, shuffle_initial=True)
        res = run_detection(s, p, seed=3, keep_collected=True)
        assert res.found == base.found and res.witness == base.witness
        assert res.collected == base.collected


def test_expected_pass1_edges():
    g = gen_overlap(12, 12)
    s = EdgeStream.from_graph(g)
    p = desk(4356)
    got = [run_detection(s, p, seed=i).pass1_edges for i in range(300)]
    # the estimate is a union bound over label classes, so it can only overshoot
    assert np.mean(got) <= expected_pass1_edges(g.m, p.params()) * 1.05
    assert np.mean(got) >= 0.8 * expected_pass1_edges(g.m, p.params())


def test_default_runs():
    assert default_runs(64) == 18
    assert default_runs(1) == 3


def test_params_validation():
    with pytest.raises(ValueError):
        DetectParams(0)
    with pytest.raises(ValueError):
        DetectParams(10, runs=0)
    with pytest.raises(ValueError):
        DetectParams(10, delta=1.5)


def test_tiny_cap_aborts_every_run():
    s = EdgeStream.from_graph(gen_overlap(8, 8))
    p = desk(784, runs=5, reference_space=0.01)
    res = amplified_detection(s, p)
    assert not res.found
    assert res.aborted == res.runs == 5


def test_cap_abort_rate():
    s = EdgeStream.from_graph(gen_onion(64))
    p = desk(2016, runs=500)
    res = amplified_detection(s, p, stop_early=False)
    assert res.runs == 500
    assert res.aborted / res.runs <= 0.1


def test_amplification_boosts_rate():
    g = gen_overlap(6, 6)
    s = EdgeStream.from_graph(g)
    T = 225
    single = np.mean([run_detection(s, desk(T), seed=i).found for i in range(400)])
    trials = 200
    amp = np.mean([amplified_detection(s, desk(T, seed=10_000 + t, runs=3, reference_space=1e9)).found
                   for t in range(trials)])
    predicted = 1 - (1 - single) ** 3
    assert amp >= predicted - 3 * math.sqrt(predicted * (1 - predicted) / trials) - 0.02
