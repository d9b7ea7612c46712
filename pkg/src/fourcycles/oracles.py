"""Sample-based heaviness oracles and the LLM test built on them.

One OracleStack belongs to one counting run. It owns extra node samples
(primed copies of the six core sets, Q1a/Q1b, Q1w/Q2w) and an edge sample,
fills its stores during the same passes as the counter, and afterwards
answers node, edge, validity and wedge queries from those stores only.
Answers are memoized, so a repeated query always gets the same answer.

Call hierarchy: node -> {edge, validity, wedge}; edge -> wedge.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .config import (
    Configuration,
    ExactModel,
    Kind,
    LabeledSubstructure,
    configurations_of,
    labeling_of,
    substructures,
    threshold,
)
from .graph import FourCycle, Graph, canonical_cycle, cycle_edges, normalize_edge, opposite_pairs
from .sampling import (
    CORE_LABELS,
    NODE_LABELS,
    PRIMED_LABELS,
    Label,
    Params,
    SampleFamily,
    Shifts,
    grid_ratio,
    grid_size,
    mix,
    edge_uniform,
)
from .stream import EdgeStore, SpaceMeter


class OracleContractError(RuntimeError):
    """A query about something the oracle was never set up to see."""


def _bits(labels) -> int:
    out = 0
    for lab in labels:
        out |= lab.bit
    return out


CORE_BITS = _bits(CORE_LABELS)
PRIMED_BITS = _bits(PRIMED_LABELS)
Q1_BITS = _bits((Label.Q1a, Label.Q1b))
QW_BITS = _bits((Label.Q1w, Label.Q2w))
ANY_BITS = _bits(NODE_LABELS)


# ---------------------------------------------------------------------------
# budget and rates


@dataclass(frozen=True)
class OracleConfig:
    """Query budgets, audit margins and sampling multipliers.

    ``node_mult`` scales the primed sets, ``qnode_mult`` Q1a/Q1b,
    ``wedge_mult`` Q1w/Q2w and ``edge_mult`` the edge sample; each is a
    factor on the base probability of the matching class.
    """

    L: int
    L1: int
    L2: int
    node_mult: float
    qnode_mult: float
    wedge_mult: float
    edge_mult: float
    profile: str = "paper"

    @property
    def eps_V(self) -> float:
        return 1.0 / (600 * self.L)

    @property
    def eps_E(self) -> float:
        return 1.0 / (600 * self.L1)

    @property
    def eps_W(self) -> float:
        return 1.0 / (600 * self.L2)

    @staticmethod
    def budgets(params: Params) -> tuple[int, int, int]:
        p = params.pair_probability
        log_t = max(math.log2(params.T), 1.0)
        L = max(1, math.ceil(400 * math.log2(1 / params.delta ** 2) * params.T * log_t * p ** 2))
        node_cap = L
        L1 = 4 * L + 4 * node_cap
        L2 = 4 * (L + L1)
        return L, L1, L2

    @classmethod
    def paper(cls, params: Params, n: int) -> "OracleConfig":
        L, L1, L2 = cls.budgets(params)
        log_n = max(math.log2(max(n, 2)), 1.0)
        c2, c3 = 201 * L, 201 * L1
        eps_E, eps_W = 1 / (600 * L1), 1 / (600 * L2)
        return cls(L, L1, L2, c2 * (600 * L) ** 2, c3 / eps_E ** 2, log_n / eps_W ** 2,
                   log_n / eps_E ** 2, "paper")

    @classmethod
    def desk(cls, params: Params, n: int, sample_eps: float = 0.25, c2: float = 1.0,
             c3: float = 1.0) -> "OracleConfig":
        """Same budgets and audit margins, sampling margin ``sample_eps`` instead."""
        L, L1, L2 = cls.budgets(params)
        log_n = max(math.log2(max(n, 2)), 1.0)
        s = sample_eps ** 2
        return cls(L, L1, L2, c2 / s, c3 / s, log_n / s, log_n / s, "desk")

    def multipliers(self) -> dict:
        out = {lab: self.node_mult for lab in PRIMED_LABELS}
        out[Label.Q1a] = out[Label.Q1b] = self.qnode_mult
        out[Label.Q1w] = out[Label.Q2w] = self.wedge_mult
        return out

    def edge_rates(self, params: Params) -> dict:
        rates = {0: self.edge_mult * params.pair_probability}
        for k in params.kappa_indices:
            rates[1 + k] = self.edge_mult * params.p2_raw(k) ** 2
        return rates

    def family(self, master_seed: int, params: Params) -> SampleFamily:
        return SampleFamily(master_seed, params, self.multipliers(), self.edge_rates(params))

    def to_dict(self) -> dict:
        return {"L": self.L, "L1": self.L1, "L2": self.L2, "node_mult": self.node_mult,
                "qnode_mult": self.qnode_mult, "wedge_mult": self.wedge_mult,
                "edge_mult": self.edge_mult, "profile": self.profile}


def edge_key(ls: LabeledSubstructure) -> int:
    """Edge-sample rate key: 0 for class p1 p2, 1 + k for class p1^2."""
    return 0 if ls.tiers == (1, 1) else 1 + ls.k


def edge_sample_mask(fam: SampleFamily, key: int, arr: np.ndarray) -> np.ndarray:
    """Vectorized SampleFamily.edge_member over an (m, 2) edge array."""
    rate = min(1.0, fam.edge_rates[key])
    if rate >= 1:
        return np.ones(len(arr), dtype=bool)
    if rate <= 0 or len(arr) == 0:
        return np.zeros(len(arr), dtype=bool)
    seed = mix(fam.master_seed, Label.Qedge.id, key)
    return edge_uniform(seed, arr) < rate


# ---------------------------------------------------------------------------
# the stack


@dataclass
class OracleStats:
    queries: int = 0
    calls: int = 0
    heavy: int = 0

    def to_dict(self) -> dict:
        return {"queries": self.queries, "calls": self.calls, "heavy": self.heavy}


class OracleStack:
    """Stores and oracles for one run.

    ``masks`` must cover every label in NODE_LABELS for every node that can
    appear in the stream. ``anchors`` are extra nodes treated as sampled
    (used when queries are issued directly rather than by the counter).
    """

    def __init__(self, fam: SampleFamily, config: OracleConfig, masks, meter: SpaceMeter,
                 shifts: Shifts, cap=None, anchors=()):
        self.fam = fam
        self.params = fam.params
        self.config = config
        self.masks = masks
        self.meter = meter
        self.shifts = shifts
        self.anchors = set(anchors)
        self.node_store = EdgeStore(meter, "oracle_node", cap)
        self.wedge_store = EdgeStore(meter, "oracle_wedge", cap)
        self.qnode_store = EdgeStore(meter, "oracle_qnode", cap)
        self.q1_store = EdgeStore(meter, "oracle_q1", cap)
        self.edge_sample = {key: EdgeStore(meter, "oracle_edge_sample", cap) for key in fam.edge_rates}
        self.completion_store = EdgeStore(meter, "oracle_completion", cap)
        self.prepared: set[tuple[int, int]] | None = None
        self._memo: dict = {}
        self._cycles_at: dict[int, list[FourCycle]] = {}
        self.stats = {name: OracleStats() for name in ("node", "edge", "validity", "wedge")}
        self.call_graph: set[tuple[str, str]] = set()
        self._stack: list[str] = []
        self.degraded = False
        K = len(self.params.grid)
        self._any_union = lambda v: any(masks.get(v, k) & ANY_BITS for k in range(K)) or v in self.anchors

    # membership helpers ------------------------------------------------------

    def in_set(self, label: Label, k: int, v: int) -> bool:
        return bool(self.masks.get(v, k) & label.bit)

    def sampled(self, v: int) -> bool:
        return self._any_union(v)

    def prob(self, label: Label, k: int) -> float:
        return self.fam.probability(label, k)

    # passes ------------------------------------------------------------------

    def pass1(self, arr: np.ndarray) -> None:
        if len(arr) == 0:
            return
        mu, mv = self.masks.rows(arr[:, 0]), self.masks.rows(arr[:, 1])
        anc = np.array(sorted(self.anchors), dtype=np.int64)
        au = np.isin(arr[:, 0], anc)
        av = np.isin(arr[:, 1], anc)
        any_u = ((mu & ANY_BITS) != 0).any(axis=1) | au
        any_v = ((mv & ANY_BITS) != 0).any(axis=1) | av
        base_u = ((mu & (CORE_BITS | PRIMED_BITS)) != 0).any(axis=1) | au
        base_v = ((mv & (CORE_BITS | PRIMED_BITS)) != 0).any(axis=1) | av
        prim_u = ((mu & PRIMED_BITS) != 0).any(axis=1)
        prim_v = ((mv & PRIMED_BITS) != 0).any(axis=1)
        qw_u = ((mu & QW_BITS) != 0).any(axis=1)
        qw_v = ((mv & QW_BITS) != 0).any(axis=1)
        q1_u = ((mu & Q1_BITS) != 0).any(axis=1)
        q1_v = ((mv & Q1_BITS) != 0).any(axis=1)
        node_sel = (prim_u & base_v) | (prim_v & base_u)
        wedge_sel = (qw_u & any_v) | (qw_v & any_u)
        qnode_sel = (q1_u & any_v) | (q1_v & any_u)
        for sel, store in ((node_sel, self.node_store), (wedge_sel, self.wedge_store),
                           (qnode_sel, self.qnode_store)):
            for i in np.flatnonzero(sel).tolist():
                store.add(int(arr[i, 0]), int(arr[i, 1]))
        for key, store in self.edge_sample.items():
            for i in np.flatnonzero(edge_sample_mask(self.fam, key, arr)).tolist():
                store.add(int(arr[i, 0]), int(arr[i, 1]))

    def pass2(self, arr: np.ndarray) -> None:
        """Q1a-Q1b edges whose endpoints both touch the pass-1 Q-node store."""
        if len(arr) == 0:
            return
        mu, mv = self.masks.rows(arr[:, 0]), self.masks.rows(arr[:, 1])
        a_u, b_u = (mu & Label.Q1a.bit) != 0, (mu & Label.Q1b.bit) != 0
        a_v, b_v = (mv & Label.Q1a.bit) != 0, (mv & Label.Q1b.bit) != 0
        sel = ((a_u & b_v) | (b_u & a_v)).any(axis=1)
        adj = self.qnode_store.adj
        for i in np.flatnonzero(sel).tolist():
            u, v = int(arr[i, 0]), int(arr[i, 1])
            if len(adj.get(u, ())) > 1 and len(adj.get(v, ())) > 1:
                self.q1_store.add(u, v)

    def candidate_edges(self, configs) -> set[tuple[int, int]]:
        """Every edge an edge-sampling query could name, given the realized configurations."""
        out: set[tuple[int, int]] = set()
        nodes = set()
        for c in configs:
            out.update(cycle_edges(c.cycle))
            nodes.update(c.cycle)
        for v in nodes:
            for cyc in self.node_cycles(v):
                out.update(cycle_edges(cyc))
        return out

    def prepare(self, edges) -> None:
        self.prepared = {normalize_edge(*e) for e in edges}

    def pass3(self, arr: np.ndarray) -> None:
        if self.prepared is None:
            raise OracleContractError("pass 3 needs the candidate edge set")
        if len(arr) == 0:
            return
        z_nodes = np.array(sorted({v for e in self.prepared for v in e}), dtype=np.int64)
        s_nodes = np.array(sorted({v for st in self.edge_sample.values() for v in st.adj}), dtype=np.int64)
        zu, zv = np.isin(arr[:, 0], z_nodes), np.isin(arr[:, 1], z_nodes)
        su, sv = np.isin(arr[:, 0], s_nodes), np.isin(arr[:, 1], s_nodes)
        for i in np.flatnonzero((zu & sv) | (zv & su)).tolist():
            self.completion_store.add(int(arr[i, 0]), int(arr[i, 1]))

    # bookkeeping -----------------------------------------------------------

    def _enter(self, name: str, key):
        st = self.stats[name]
        st.calls += 1
        if self._stack:
            self.call_graph.add((self._stack[-1], name))
        hit = self._memo.get((name, key))
        return hit

    def _store(self, name: str, key, answer: bool) -> bool:
        st = self.stats[name]
        st.queries += 1
        st.heavy += bool(answer)
        self._memo[(name, key)] = answer
        limit = {"node": self.config.L, "edge": self.config.L1,
                 "validity": self.config.L1, "wedge": self.config.L2}[name]
        if st.queries > limit:
            self.degraded = True
        return answer

    def _check_nodes(self, nodes) -> None:
        for v in nodes:
            if not self.sampled(v):
                raise OracleContractError(f"node {v} was never sampled")

    # wedge oracle ------------------------------------------------------------

    def wedge_estimate(self, ls: LabeledSubstructure) -> tuple[int, float]:
        """(closing-node count q, sampling rate) for a wedge query."""
        u, c, v = ls.nodes
        label = Label.Q2w if ls.tiers == (2, 1) else Label.Q1w
        k = ls.k
        adj = self.wedge_store.adj
        nu, nv = adj.get(u, set()), adj.get(v, set())
        if len(nu) > len(nv):
            nu, nv = nv, nu
        q = sum(1 for z in nu if z != c and z in nv and self.in_set(label, k, z))
        return q, self.prob(label, k)

    def wedge_heavy(self, ls: LabeledSubstructure) -> bool:
        hit = self._enter("wedge", ls)
        if hit is not None:
            return hit
        self._check_nodes((ls.nodes[0], ls.nodes[2]))
        q, rate = self.wedge_estimate(ls)
        return self._store("wedge", ls, q > rate * self.shifts.s1 * threshold(ls, self.params))

    # edge oracles ------------------------------------------------------------

    def edge_sample_count(self, u: int, w: int, key: int) -> int:
        """Cycles u-w-a-b-u whose edge (a, b) is in the edge sample under ``key``."""
        if self.prepared is None or normalize_edge(u, w) not in self.prepared:
            raise OracleContractError(f"edge ({u}, {w}) was not prepared for pass 3")
        comp = self.completion_store.adj
        sample = self.edge_sample[key].adj
        near_u = comp.get(u, set())
        q = 0
        for a in comp.get(w, ()):
            if a == u:
                continue
            for b in sample.get(a, ()):
                if b != u and b != w and b in near_u:
                    q += 1
        return q

    def edge_rate(self, key: int) -> float:
        return min(1.0, self.fam.edge_rates[key])

    def validity(self, u: int, w: int) -> bool:
        e = normalize_edge(u, w)
        hit = self._enter("validity", e)
        if hit is not None:
            return hit
        self._stack.append("validity")
        try:
            q = self.edge_sample_count(*e, 0)
        finally:
            self._stack.pop()
        bound = self.edge_rate(0) * self.params.sqrtT / self.params.delta ** 2
        return self._store("validity", e, q > bound)

    def qnode_configurations(self, ls: LabeledSubstructure) -> list[Configuration]:
        """Oracle configurations through an R2a-R2b edge realized by Q1a/Q1b."""
        (n0, n1), l0 = ls.nodes, ls.labels[0]
        a, b = (n0, n1) if l0 is Label.R2a else (n1, n0)
        k = ls.k
        adj = self.qnode_store.adj
        out = []
        for y in adj.get(a, ()):
            if y == b or not self.in_set(Label.Q1b, k, y):
                continue
            for x in adj.get(b, ()):
                if x == a or x == y or x > y or not self.in_set(Label.Q1a, k, x):
                    continue
                if self.q1_store.has(x, y):
                    out.append(Configuration(canonical_cycle(x, y, a, b), k, x, y))
        return out

    def edge_heavy(self, ls: LabeledSubstructure) -> bool:
        hit = self._enter("edge", ls)
        if hit is not None:
            return hit
        self._stack.append("edge")
        try:
            theta = self.shifts.s2 * threshold(ls, self.params)
            if ls.tiers == (0, 2):
                self._check_nodes(ls.nodes)
                q = 0
                for c in self.qnode_configurations(ls):
                    if all(not self.wedge_heavy(w) for w in substructures(c, False) if w.kind is Kind.WEDGE):
                        q += 1
                rate = self.prob(Label.Q1a, ls.k) * self.prob(Label.Q1b, ls.k)
                answer = q > rate * theta
            else:
                key = edge_key(ls)
                answer = self.edge_sample_count(*ls.nodes, key) > self.edge_rate(key) * theta
        finally:
            self._stack.pop()
        return self._store("edge", ls, answer)

    # node oracle -------------------------------------------------------------

    def node_cycles(self, v: int) -> list[FourCycle]:
        """Four-cycles through v using only node-oracle store edges."""
        hit = self._cycles_at.get(v)
        if hit is not None:
            return hit
        adj = self.node_store.adj
        out = set()
        nbrs = sorted(adj.get(v, ()))
        for i, a in enumerate(nbrs):
            na = adj.get(a, set())
            for c in nbrs[i + 1:]:
                for b in adj.get(c, ()):
                    if b != v and b != a and b in na:
                        out.add(canonical_cycle(v, a, b, c))
        res = sorted(out)
        self._cycles_at[v] = res
        return res

    def node_estimate(self, ls: LabeledSubstructure) -> tuple[int, float]:
        """(count of oracle configurations passing the sub-oracles, their sampling rate)."""
        v, label, k = ls.nodes[0], ls.labels[0], ls.k
        q = 0
        rate = None
        for cyc in self.node_cycles(v):
            for c in configurations_of(cyc, k):
                lab = labeling_of(c)
                if lab[v] is not label:
                    continue
                others = [w for w in cyc if w != v]
                if rate is None:
                    rate = math.prod(self.prob(lab[w].primed, k) for w in others)
                if not all(self.in_set(lab[w].primed, k, w) for w in others):
                    continue
                if c.adjacent and not self.validity(c.x, c.y):
                    continue
                subs = substructures(c, False)
                if any(self.wedge_heavy(s) for s in subs if s.kind is Kind.WEDGE):
                    continue
                if any(self.edge_heavy(s) for s in subs if s.kind is Kind.EDGE):
                    continue
                q += 1
        if rate is None:
            rate = self.node_rate(ls)
        return q, rate

    def node_rate(self, ls: LabeledSubstructure) -> float:
        """Sampling rate of the other three nodes of any configuration giving v this label."""
        label, k = ls.labels[0], ls.k
        if label in (Label.S1, Label.S2):
            other = Label.S2 if label is Label.S1 else Label.S1
            labels = (label, other, other)
        else:
            labels = tuple(lab for lab in (Label.R1a, Label.R1b, Label.R2a, Label.R2b) if lab is not label)
        return math.prod(self.prob(lab.primed, k) for lab in labels)

    def node_heavy(self, ls: LabeledSubstructure) -> bool:
        hit = self._enter("node", ls)
        if hit is not None:
            return hit
        self._check_nodes(ls.nodes)
        self._stack.append("node")
        try:
            q, rate = self.node_estimate(ls)
        finally:
            self._stack.pop()
        return self._store("node", ls, q > rate * self.shifts.s3 * threshold(ls, self.params))

    # configurations --------------------------------------------------------

    def heavy(self, ls: LabeledSubstructure) -> bool:
        if ls.kind is Kind.WEDGE:
            return self.wedge_heavy(ls)
        if ls.kind is Kind.EDGE:
            return self.edge_heavy(ls)
        if ls.kind is Kind.NODE:
            return self.node_heavy(ls)
        raise ValueError("opposite pairs are not queried")

    def light(self, c: Configuration) -> bool:
        c = c.canonical()
        subs = substructures(c, False)
        order = {Kind.WEDGE: 0, Kind.EDGE: 1, Kind.NODE: 2}
        return not any(self.heavy(s) for s in sorted(subs, key=lambda s: order[s.kind]))

    def locally_minimal(self, c: Configuration) -> bool:
        c = c.canonical()
        k, depth = c.k, self.params.llm_depth
        if k == 0:
            return c.pair == min(opposite_pairs(c.cycle)) if c.opposite else True
        if 2.0 ** k >= 1.0 / self.params.delta ** 2 * (1 - 1e-12):
            return all(not self.light(Configuration(c.cycle, k - j, c.x, c.y)) for j in range(1, depth + 1))
        for j in range(1, min(depth, 2 * k - 1) + 1):
            if self.light(Configuration(c.cycle, k - j, c.x, c.y)):
                return False
        ext = Configuration(c.cycle, -k, c.x, c.y)
        if not self.light(ext):
            return True
        return c.pair < ext.canonical().pair

    def is_llm(self, c: Configuration) -> bool:
        c = c.canonical()
        if not self.light(c):
            return False
        if not self.locally_minimal(c):
            return False
        if c.adjacent and not self.validity(c.x, c.y):
            return False
        return True

    def report(self) -> dict:
        return {
            "oracles": {name: st.to_dict() for name, st in self.stats.items()},
            "stored": {
                "node": len(self.node_store), "wedge": len(self.wedge_store),
                "qnode": len(self.qnode_store), "q1": len(self.q1_store),
                "edge_sample": sum(len(s) for s in self.edge_sample.values()),
                "completion": len(self.completion_store),
            },
            "degraded": self.degraded,
            "config": self.config.to_dict(),
        }


def is_llm_oracle(stack: OracleStack, c: Configuration) -> bool:
    return stack.is_llm(c)


def build_stack(stream, fam: SampleFamily, config: OracleConfig, shifts: Shifts, anchors=(),
                prepared=None, meter: SpaceMeter | None = None) -> OracleStack:
    """Run the three passes for a stand-alone stack (no counter attached).

    ``prepared`` is the edge set that edge-sampling queries may name; by
    default every edge of every node-oracle cycle through an anchor.
    """
    from .detect import NodeMasks, pass_array

    meter = meter or SpaceMeter()
    arr1 = pass_array(stream, 1)
    masks = NodeMasks(fam, arr1.ravel(), NODE_LABELS)
    stack = OracleStack(fam, config, masks, meter, shifts, anchors=anchors)
    stack.pass1(arr1)
    stack.pass2(pass_array(stream, 2))
    if prepared is None:
        prepared = set()
        for v in anchors:
            for cyc in stack.node_cycles(v):
                prepared.update(cycle_edges(cyc))
    stack.prepare(prepared)
    stack.pass3(pass_array(stream, 3))
    return stack


# ---------------------------------------------------------------------------
# shift audit


def bad_indices(t: float, theta: float, grid: float, eps: float) -> list[int]:
    """Grid indices i with (1 - eps) s_i theta <= t <= (1 + eps) s_i theta."""
    if t <= 0 or theta <= 0:
        return []
    r = grid_ratio(grid)
    size = grid_size(grid)
    lo = math.log(t / ((1 + eps) * theta)) / math.log(r)
    hi = math.log(t / ((1 - eps) * theta)) / math.log(r)
    out = []
    for i in range(max(0, math.floor(lo) - 1), min(size - 1, math.ceil(hi) + 1) + 1):
        s = r ** i
        if (1 - eps) * s * theta <= t <= (1 + eps) * s * theta:
            out.append(i)
    return out


def audit_subjects(model: ExactModel) -> list[LabeledSubstructure]:
    """Every node, edge and wedge labeled substructure of every configuration."""
    seen = {}
    for cyc in model.cycles:
        for k in model.params.kappa_indices:
            for c in configurations_of(cyc, k):
                for ls in substructures(c, False):
                    seen[ls] = None
    return list(seen)


def shift_margin_audit(g: Graph, shifts: Shifts, params: Params, grids=None, model=None) -> dict:
    """Which substructures sit inside an oracle uncertainty band, per shift grid.

    Each kind is swept over its own grid with the other shifts held at
    ``shifts``: nodes over grid L (s3), edges over L1 (s2), wedges over L2
    (s1). The band uses eps = 1/(600 * grid).
    """
    model = model or ExactModel(g, params, shifts)
    if grids is None:
        grids = (shifts.L, shifts.L1, shifts.L2)
    L, L1, L2 = grids
    grid_of = {Kind.NODE: L, Kind.EDGE: L1, Kind.WEDGE: L2}
    bad = []
    per_grid: dict[str, set] = defaultdict(set)
    max_per_sub = 0
    subjects = audit_subjects(model)
    for ls in subjects:
        grid = grid_of[ls.kind]
        idx = bad_indices(model.refined(ls), threshold(ls, params), grid, 1 / (600 * grid))
        max_per_sub = max(max_per_sub, len(idx))
        if idx:
            bad.append({**ls.to_dict(), "indices": idx})
            per_grid[ls.kind.value].update(idx)
    sizes = {"node": grid_size(L), "edge": grid_size(L1), "wedge": grid_size(L2)}
    budget = {"node": L, "edge": L1, "wedge": L2}
    return {
        "audited": len(subjects),
        "bad": bad,
        "max_bad_shifts_per_substructure": max_per_sub,
        "disjoint": max_per_sub <= 1,
        "bad_shift_fraction": {k: len(per_grid[k]) / sizes[k] for k in sizes},
        "budget_over_grid": {k: budget[k] / sizes[k] for k in sizes},
        "grid_sizes": sizes,
    }
