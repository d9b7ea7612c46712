import math

import numpy as np
import pytest
from scipy import stats

from fourcycles.sampling import (
    CORE_LABELS,
    Label,
    Params,
    SampleFamily,
    Shifts,
    default_count_delta,
    default_detect_delta,
    draw_shifts,
    grid_size,
    index_set,
    member,
    probabilities,
    resolve_c1,
    resolve_delta,
    shift_grid,
    unsaturated_c1,
)


def test_index_set_examples():
    assert list(index_set(65536)) == [16, 32, 64, 128, 256]
    assert list(index_set(1)) == [1]
    assert list(index_set(256)) == [4, 8, 16]


def test_index_set_rejects_zero():
    with pytest.raises(ValueError):
        index_set(0)


@pytest.mark.parametrize("T", [1, 2, 15, 16.1, 100, 784, 10**5, 3.7e7])
def test_index_set_span(T):
    grid = index_set(T)
    vals = list(grid)
    assert vals[0] == pytest.approx(T ** 0.25)
    assert vals[-1] <= 2 * math.sqrt(T) * (1 + 1e-12)
    if T > 1:
        assert vals[-1] >= math.sqrt(T) * (1 - 1e-12)
    assert all(b == pytest.approx(2 * a) for a, b in zip(vals, vals[1:]))


def test_probabilities_at_top():
    T, d, c1 = 4096, 0.3, 0.7
    pr = probabilities(math.sqrt(T), T, d, c1)
    assert pr.p1_raw == pytest.approx(c1 / d ** 1.5)
    assert pr.p2_raw == pytest.approx(c1 / (d ** 1.5 * math.sqrt(T)))
    assert pr.p1 == 1.0 and pr.saturated


def test_probabilities_direct_evaluation():
    # c1 / delta^1.5 = 1 reproduces the delta = 1, c1 = 1 hand calculation
    d = 0.5
    pr = probabilities(2, 16, d, d ** 1.5)
    assert pr.p1 == pytest.approx(0.5)
    assert pr.p2 == pytest.approx(0.5)


@pytest.mark.parametrize("mode", ["detect", "count"])
@pytest.mark.parametrize("T", [16, 1000, 65536])
def test_pair_probability_constant_over_grid(mode, T):
    p = Params(T, 0.3, 0.9, mode)
    prods = [p.p1_raw(k) * p.p2_raw(k) for k in p.kappa_indices]
    for x in prods:
        assert x == pytest.approx(p.pair_probability, rel=1e-14)


def test_default_deltas():
    assert default_detect_delta(1024) == pytest.approx(1 / (2098 * 10))
    assert default_count_delta(1024, 0.5) == pytest.approx(0.5 / (2098 * 1000))
    assert resolve_delta(1024, "detect", "paper") == default_detect_delta(1024)
    assert resolve_delta(1024, "count", "desk") == 0.25
    assert resolve_delta(1024, "count", "desk", override=0.1) == 0.1


def test_unsaturated_c1_hits_target():
    for T in (50, 784, 14400):
        c1 = unsaturated_c1(T, 0.25)
        p = Params(T, 0.25, c1)
        top = max(max(p.p1_raw(k), p.p2_raw(k)) for k in p.kappa_indices)
        assert top == pytest.approx(0.95)
        assert not p.saturated
    assert resolve_c1(784, 0.25, "count") == 0.0625
    assert resolve_c1(784, 0.25, "detect", "paper") == 1.0


def test_member_clamped_extremes():
    p = Params(16, 0.5, 50.0)
    fam = SampleFamily(1, p)
    assert all(member(fam, Label.S1, 0, v) for v in range(200))
    zero = SampleFamily(1, p, multipliers={Label.S1p: 0.0})
    assert not any(zero.member(Label.S1p, 0, v) for v in range(200))


def test_member_rate():
    n = 10**5
    p = Params(10**4, 0.5, 1.0)
    fam = SampleFamily(7, p, multipliers={Label.Q1w: 0.01 / p.p1(0)})
    rate = fam.probability(Label.Q1w, 0)
    assert rate == pytest.approx(0.01)
    masks = fam.mask_array(range(n), [Label.Q1w], [0])
    hits = int((masks[:, 0] & Label.Q1w.bit != 0).sum())
    sigma = math.sqrt(rate * (1 - rate) / n)
    assert abs(hits / n - rate) <= 3 * sigma


def test_member_is_pure_and_matches_vectorized():
    p = Params(784, 0.4, 0.3)
    a, b = SampleFamily(11, p), SampleFamily(11, p)
    nodes = list(range(500))
    masks = a.mask_array(nodes, CORE_LABELS)
    for lab in CORE_LABELS:
        for k in p.kappa_indices:
            got = [a.member(lab, k, v) for v in nodes]
            assert got == [b.member(lab, k, v) for v in nodes]
            assert got == [bool(masks[v, k] & lab.bit) for v in nodes]


def test_labels_independent():
    p = Params(10**4, 0.5, 1.0)
    fam = SampleFamily(3, p, multipliers={Label.Q1a: 0.3 / p.p1(0), Label.Q1b: 0.3 / p.p1(0)})
    masks = fam.mask_array(range(10**5), [Label.Q1a, Label.Q1b], [0])[:, 0]
    a = (masks & Label.Q1a.bit) != 0
    b = (masks & Label.Q1b.bit) != 0
    table = [[int((a & b).sum()), int((a & ~b).sum())], [int((~a & b).sum()), int((~a & ~b).sum())]]
    assert stats.chi2_contingency(table)[1] > 0.001


def test_edge_member_symmetric():
    p = Params(784, 0.4, 0.3)
    fam = SampleFamily(5, p, edge_rates={0: 0.5})
    for u in range(20):
        for v in range(u + 1, 20):
            assert fam.edge_member(0, u, v) == fam.edge_member(0, v, u)


def test_shift_grid_unit():
    grid = shift_grid(1)
    assert len(grid) == 139 == grid_size(1)
    assert grid[0] == 1.0
    assert all(s < 2 for s in grid)
    assert 1.005 ** 139 >= 2
    for i in (0, 1, 138):
        assert grid[i] == pytest.approx(1.005 ** i)


def test_shift_index_zero():
    s = Shifts.from_indices(0, 0, 0, 3, 5, 7)
    assert (s.s1, s.s2, s.s3) == (1.0, 1.0, 1.0)
    assert s.with_index("s2", 4).s2 == pytest.approx((1 + 1 / 1000) ** 4)


def test_draw_shifts_uniform():
    rng = np.random.default_rng(0)
    draws = [draw_shifts(rng, 1, 1, 1).i3 for _ in range(10**4)]
    counts = np.bincount(draws, minlength=139)
    assert len(counts) == 139 and counts.min() > 0
    assert stats.chisquare(counts).pvalue > 0.01


def test_draw_shifts_rejects_small_grid():
    with pytest.raises(ValueError):
        draw_shifts(np.random.default_rng(0), 0.5, 1, 1)


def test_params_validation():
    with pytest.raises(ValueError):
        Params(0, 0.5)
    with pytest.raises(ValueError):
        Params(10, 1.0)
    with pytest.raises(ValueError):
        Params(10, 0.5, mode="other")
