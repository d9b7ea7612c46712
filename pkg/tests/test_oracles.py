import math

import numpy as np
import pytest

from fourcycles.config import ExactModel, Kind, LabeledSubstructure, configurations_of, substructures
from fourcycles.count import CountParams
from fourcycles.generators import gen_heavy_edge, gen_onion, gen_overlap, gen_tree
from fourcycles.graph import enumerate_four_cycles
from fourcycles.oracles import (
    OracleConfig,
    OracleContractError,
    OracleStack,
    bad_indices,
    build_stack,
    shift_margin_audit,
)
from fourcycles.sampling import Label, Params, Shifts, grid_ratio, grid_size
from fourcycles.stream import EdgeStream

ALLOWED_CALLS = {("node", "edge"), ("node", "validity"), ("node", "wedge"), ("edge", "wedge")}


def stack_for(g, T, delta=0.5, c=0.0625, seed=0, sample_eps=0.25, anchors=None, config=None):
    cp = CountParams(T, delta=delta, c=c, sample_eps=sample_eps)
    p = cp.params()
    config = config or cp.oracle_config(len(g.nodes))
    shifts = Shifts(L=config.L, L1=config.L1, L2=config.L2)
    anchors = sorted(g.nodes) if anchors is None else anchors
    prepared = {tuple(sorted(e)) for e in g.edges}
    stack = build_stack(EdgeStream.from_graph(g), config.family(seed, p), config, shifts, anchors=anchors,
                        prepared=prepared)
    return stack, ExactModel(g, p, shifts)


def test_budgets():
    p = Params(100, 0.25, 0.01, "count")
    L, L1, L2 = OracleConfig.budgets(p)
    expected = math.ceil(400 * math.log2(16) * 100 * math.log2(100) * p.pair_probability ** 2)
    assert L == max(1, expected)
    assert L1 == 8 * L and L2 == 4 * (L + L1)
    assert 1 <= L <= L1 <= L2


def test_desk_and_paper_multipliers():
    p = Params(100, 0.25, 0.01, "count")
    desk = OracleConfig.desk(p, 64, sample_eps=0.5)
    assert desk.node_mult == 4 and desk.edge_mult == 6 * 4
    paper = OracleConfig.paper(p, 64)
    assert paper.node_mult > desk.node_mult and paper.profile == "paper"
    assert desk.eps_V == 1 / (600 * desk.L)


def test_bad_for_exactly_one_grid_point():
    L, theta, i = 3, 5.0, 17
    t = theta * grid_ratio(L) ** i
    assert bad_indices(t, theta, L, 1 / (600 * L)) == [i]
    assert bad_indices(0, theta, L, 1 / (600 * L)) == []
    assert bad_indices(100 * theta, theta, L, 1 / (600 * L)) == []


def test_grid_size_covers_factor_two():
    for L in (1, 3, 10):
        r, n = grid_ratio(L), grid_size(L)
        assert r ** (n - 1) < 2 <= r ** n


@pytest.mark.parametrize("g,T", [(gen_heavy_edge(12), 12), (gen_onion(8), 28), (gen_overlap(3, 4), 18)])
def test_audit_is_disjoint(g, T):
    cp = CountParams(T, delta=0.5, c=0.0625)
    config = cp.oracle_config(len(g.nodes))
    shifts = Shifts(L=config.L, L1=config.L1, L2=config.L2)
    rep = shift_margin_audit(g, shifts, cp.params())
    assert rep["disjoint"]
    assert rep["audited"] > 0
    for kind in ("node", "edge", "wedge"):
        assert rep["bad_shift_fraction"][kind] <= max(rep["budget_over_grid"][kind], 1.0)


def test_no_cycles_means_light():
    g = gen_tree(12, 3)
    stack, _ = stack_for(g, 4)
    for v in g.nodes:
        assert not stack.node_heavy(LabeledSubstructure(Kind.NODE, (v,), 0, (Label.S1,)))
    for u, v in g.edges:
        u, v = min(u, v), max(u, v)
        assert not stack.edge_heavy(LabeledSubstructure(Kind.EDGE, (u, v), 0, (Label.R1a, Label.R1b)))
        assert not stack.validity(u, v)


def test_planted_heavy_edge():
    g = gen_heavy_edge(60)
    stack, model = stack_for(g, 60)
    ls = LabeledSubstructure(Kind.EDGE, (0, 1), 0, (Label.R1a, Label.R1b))
    assert model.heavy(ls)
    assert stack.edge_heavy(ls)
    assert stack.validity(0, 1)
    assert not stack.validity(2, 3)


def test_planted_onion_hub_wedge():
    g = gen_onion(16)
    stack, model = stack_for(g, 40)
    ls = LabeledSubstructure(Kind.WEDGE, (0, 2, 1), 0, (Label.S1, Label.S2, Label.S1))
    assert model.heavy(ls) == stack.wedge_heavy(ls)


def test_answers_are_memoized():
    g = gen_overlap(3, 4)
    stack, _ = stack_for(g, 18)
    ls = LabeledSubstructure(Kind.NODE, (0,), 0, (Label.S1,))
    first = stack.node_heavy(ls)
    queries = stack.stats["node"].queries
    assert all(stack.node_heavy(ls) == first for _ in range(5))
    assert stack.stats["node"].queries == queries
    assert stack.stats["node"].calls == 6


def test_contract_errors():
    g = gen_overlap(3, 4)
    stack, _ = stack_for(g, 18, anchors=[], c=1e-6)
    with pytest.raises(OracleContractError):
        stack.node_heavy(LabeledSubstructure(Kind.NODE, (0,), 0, (Label.S1,)))
    full, _ = stack_for(g, 18)
    with pytest.raises(OracleContractError):
        full.edge_sample_count(0, 1, 0)  # 0 and 1 are on the same side, never an edge
    fresh = OracleStack(full.fam, full.config, full.masks, full.meter, full.shifts)
    with pytest.raises(OracleContractError):
        fresh.pass3(np.array([[0, 3]]))


def test_call_graph_is_acyclic_and_follows_the_hierarchy():
    g = gen_heavy_edge(20)
    stack, model = stack_for(g, 20)
    for cyc in enumerate_four_cycles(g)[:10]:
        for k in model.params.kappa_indices:
            for c in configurations_of(cyc, k):
                stack.is_llm(c)
    assert stack.call_graph <= ALLOWED_CALLS
    assert stack.call_graph


def test_floor_local_minimality_needs_no_oracle_calls():
    g = gen_onion(6)
    stack, _ = stack_for(g, 15)
    cyc = enumerate_four_cycles(g)[0]
    before = {name: st.calls for name, st in stack.stats.items()}
    for c in configurations_of(cyc, 0):
        stack.locally_minimal(c)
    assert {name: st.calls for name, st in stack.stats.items()} == before


def test_heavy_configuration_is_rejected():
    g = gen_heavy_edge(60)
    stack, model = stack_for(g, 60)
    for cyc in enumerate_four_cycles(g)[:5]:
        for c in configurations_of(cyc, 0):
            if any(model.heavy(s) for s in substructures(c, False)) and not stack.light(c):
                assert not stack.is_llm(c)


def test_degraded_when_budget_exceeded():
    g = gen_overlap(3, 4)
    tiny = OracleConfig(1, 1, 1, 1.0, 1.0, 1.0, 1.0, "desk")
    stack, _ = stack_for(g, 18, config=tiny)
    for v in range(3):
        stack.node_heavy(LabeledSubstructure(Kind.NODE, (v,), 0, (Label.S1,)))
    assert stack.degraded
    assert stack.report()["degraded"]


def test_agrees_with_reference_when_samples_saturate():
    g = gen_overlap(4, 5)
    stack, model = stack_for(g, 60, delta=0.25)
    for cyc in enumerate_four_cycles(g)[:15]:
        for k in model.params.kappa_indices:
            for c in configurations_of(cyc, k):
                assert stack.is_llm(c) == model.is_llm(c)
