"""Configurations, labelings, thresholds and the exact LLM reference model.

A configuration (A, k, x, y) names a four-cycle A, a kappa index k and a
node pair x < y of A. Kappa is always carried as its integer index k with
kappa = T^(1/4) * 2^k; negative k denotes the extended value sqrt(T)/kappa,
which is identified with the complementary pair at index -k.
"""

from __future__ import annotations

import enum
import math
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations

from .graph import (
    FourCycle,
    Graph,
    Wedge,
    canonical_cycle,
    codegrees,
    cycle_edges,
    cycle_neighbors,
    cycle_wedges,
    edge_heaviness,
    enumerate_four_cycles,
    heaviness_by_enumeration,
    normalize_edge,
    opposite_of,
    opposite_pairs,
)
from .sampling import Label, Params, SampleFamily, Shifts, log2_floor1


class Kind(enum.Enum):
    NODE = "node"
    EDGE = "edge"
    WEDGE = "wedge"
    PAIR = "pair"


@dataclass(frozen=True, order=True)
class Configuration:
    cycle: FourCycle
    k: int
    x: int
    y: int

    def __post_init__(self):
        if not (self.x < self.y and self.x in self.cycle and self.y in self.cycle):
            raise ValueError(f"bad configuration pair ({self.x}, {self.y}) for cycle {self.cycle}")

    @classmethod
    def make(cls, cycle, k: int, x: int, y: int) -> "Configuration":
        x, y = min(x, y), max(x, y)
        return cls(canonical_cycle(*cycle), k, x, y)

    @property
    def adjacent(self) -> bool:
        return opposite_of(self.cycle, self.x) != self.y

    @property
    def opposite(self) -> bool:
        return not self.adjacent

    @property
    def pair(self) -> tuple[int, int]:
        return (self.x, self.y)

    def complement(self) -> tuple[int, int]:
        rest = sorted(v for v in self.cycle if v not in (self.x, self.y))
        return rest[0], rest[1]

    def canonical(self) -> "Configuration":
        """Map an extended configuration (k < 0) to its identified partner."""
        if self.k >= 0:
            return self
        a, b = self.complement()
        return Configuration(self.cycle, -self.k, a, b)

    def to_dict(self) -> dict:
        return {"cycle": list(self.cycle), "k": self.k, "x": self.x, "y": self.y}


def node_pairs(cycle: FourCycle) -> list[tuple[int, int]]:
    return sorted((min(a, b), max(a, b)) for a, b in combinations(cycle, 2))


def configurations_of(cycle: FourCycle, k: int) -> list[Configuration]:
    return [Configuration(cycle, k, x, y) for x, y in node_pairs(cycle)]


def labeling_of(c: Configuration) -> dict[int, Label]:
    if c.x not in c.cycle or c.y not in c.cycle:
        raise ValueError("x and y must lie on the cycle")
    if c.opposite:
        return {v: (Label.S1 if v in (c.x, c.y) else Label.S2) for v in c.cycle}
    x_other = [w for w in cycle_neighbors(c.cycle, c.x) if w != c.y][0]
    y_other = [w for w in cycle_neighbors(c.cycle, c.y) if w != c.x][0]
    return {c.x: Label.R1a, c.y: Label.R1b, x_other: Label.R2b, y_other: Label.R2a}


@dataclass(frozen=True)
class LabeledSubstructure:
    """A node, edge, wedge or opposite pair at kappa index k with labels.

    ``nodes`` is (v,) for a node, (u, v) with u < v for edges and pairs, and
    (u, center, v) with u < v for wedges; ``labels`` is aligned with it.
    """

    kind: Kind
    nodes: tuple
    k: int
    labels: tuple

    @property
    def tiers(self) -> tuple[int, int]:
        ones = sum(1 for lab in self.labels if lab.tier == 1)
        return ones, len(self.labels) - ones

    @property
    def substructure(self):
        if self.kind is Kind.NODE:
            return self.nodes[0]
        if self.kind is Kind.WEDGE:
            return Wedge(*self.nodes)
        return self.nodes

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "nodes": list(self.nodes),
            "k": self.k,
            "labels": [lab.name for lab in self.labels],
        }


def _labeled(kind: Kind, nodes: tuple, k: int, lab: dict) -> LabeledSubstructure:
    return LabeledSubstructure(kind, nodes, k, tuple(lab[v] for v in nodes))


def substructures(c: Configuration, with_pairs: bool = True) -> list[LabeledSubstructure]:
    """The 4 nodes, 4 edges, 4 wedges and (optionally) 2 opposite pairs of c."""
    lab = labeling_of(c)
    out = [_labeled(Kind.NODE, (v,), c.k, lab) for v in c.cycle]
    out += [_labeled(Kind.EDGE, e, c.k, lab) for e in cycle_edges(c.cycle)]
    out += [_labeled(Kind.WEDGE, tuple(w), c.k, lab) for w in cycle_wedges(c.cycle)]
    if with_pairs:
        out += [_labeled(Kind.PAIR, p, c.k, lab) for p in opposite_pairs(c.cycle)]
    return out


def realized(c: Configuration, fam: SampleFamily) -> bool:
    lab = labeling_of(c)
    return all(fam.member(lab[v], c.k, v) for v in c.cycle)


def substructure_probability(ls: LabeledSubstructure, params: Params) -> tuple[float, float]:
    """(pre-clamp, post-clamp) value of p1^i * p2^j."""
    i, j = ls.tiers
    pre = params.p1_raw(ls.k) ** i * params.p2_raw(ls.k) ** j
    post = params.p1(ls.k) ** i * params.p2(ls.k) ** j
    return pre, post


def threshold_value(kind: Kind, tiers: tuple[int, int], kappa: float, T: float, delta: float) -> float:
    sq = math.sqrt(T)
    if kind is Kind.NODE:
        if tiers == (1, 0):
            return kappa * sq / delta ** 1.5
        if tiers == (0, 1):
            return T / (kappa * delta ** 1.5)
    elif kind in (Kind.EDGE, Kind.PAIR):
        if tiers == (2, 0):
            return kappa ** 2 / delta ** 2
        if tiers == (1, 1):
            return sq / delta ** 2
        if tiers == (0, 2):
            return T / (kappa ** 2 * delta ** 2)
    elif kind is Kind.WEDGE:
        if tiers == (2, 1):
            return kappa / delta
        if tiers == (1, 2):
            return sq / (kappa * delta)
    raise ValueError(f"no threshold for a {kind.value} of class p1^{tiers[0]} p2^{tiers[1]}")


def threshold(ls: LabeledSubstructure, params: Params) -> float:
    return threshold_value(ls.kind, ls.tiers, params.kappa(ls.k), params.T, params.delta)


# threshold classes per kind, listed from the largest threshold to the smallest
THRESHOLD_CLASSES = {
    Kind.NODE: [(1, 0), (0, 1)],
    Kind.EDGE: [(2, 0), (1, 1), (0, 2)],
    Kind.WEDGE: [(2, 1), (1, 2)],
}


def shift_for(kind: Kind, shifts: Shifts) -> float:
    if kind is Kind.NODE:
        return shifts.s3
    if kind is Kind.EDGE:
        return shifts.s2
    if kind is Kind.WEDGE:
        return shifts.s1
    return shifts.s1 ** 2


class ExactModel:
    """Exhaustive reference for heaviness, validity, kappa_A and LLM membership.

    Meant for desk-scale graphs: everything is computed from the full list
    of four-cycles and memoized per labeled substructure.
    """

    def __init__(self, g: Graph, params: Params, shifts: Shifts | None = None):
        self.g = g
        self.params = params
        self.shifts = shifts or Shifts()
        self.cycles = enumerate_four_cycles(g)
        self.codegree = codegrees(g)
        self.node_t, self.edge_t, self.wedge_t = heaviness_by_enumeration(g, self.cycles)
        self._by_node: dict[int, list[FourCycle]] = defaultdict(list)
        self._by_edge: dict[tuple[int, int], list[FourCycle]] = defaultdict(list)
        for cyc in self.cycles:
            for v in cyc:
                self._by_node[v].append(cyc)
            for e in cycle_edges(cyc):
                self._by_edge[e].append(cyc)
        self._refined: dict[LabeledSubstructure, int] = {}
        self._light: dict[Configuration, bool] = {}
        # shift-independent, shared with with_shifts copies
        self._containing: dict[LabeledSubstructure, list[Configuration]] = {}
        self._parts: dict[Configuration, tuple[list, list]] = {}

    def with_shifts(self, shifts: Shifts) -> "ExactModel":
        """A model sharing the cycle tables but using other shifts."""
        other = object.__new__(ExactModel)
        other.__dict__.update(self.__dict__)
        other.shifts = shifts
        other._refined = {}
        other._light = {}
        return other

    # plain heaviness ------------------------------------------------------

    def t_node(self, v: int) -> int:
        return self.node_t.get(v, 0)

    def t_edge(self, u: int, v: int) -> int:
        return self.edge_t.get(normalize_edge(u, v), 0)

    def t_wedge(self, w: Wedge) -> int:
        return self.codegree.get((w.u, w.v), 0) - 1

    def t_pair(self, u: int, v: int) -> int:
        return math.comb(self.codegree.get(normalize_edge(u, v), 0), 2)

    def true_t(self, ls: LabeledSubstructure) -> int:
        if ls.kind is Kind.NODE:
            return self.t_node(ls.nodes[0])
        if ls.kind is Kind.EDGE:
            return self.t_edge(*ls.nodes)
        if ls.kind is Kind.WEDGE:
            return self.t_wedge(Wedge(*ls.nodes))
        return self.t_pair(*ls.nodes)

    # containment ----------------------------------------------------------

    def cycles_containing(self, ls: LabeledSubstructure) -> list[FourCycle]:
        if ls.kind is Kind.NODE:
            return self._by_node.get(ls.nodes[0], [])
        if ls.kind is Kind.EDGE:
            return self._by_edge.get(ls.nodes, [])
        if ls.kind is Kind.WEDGE:
            u, w, v = ls.nodes
            second = set(self._by_edge.get(normalize_edge(w, v), []))
            return [c for c in self._by_edge.get(normalize_edge(u, w), []) if c in second]
        u, v = ls.nodes
        return [c for c in self._by_node.get(u, []) if opposite_of(c, u) == v]

    def configurations_containing(self, ls: LabeledSubstructure) -> list[Configuration]:
        """Configurations at ls.k whose labeling restricts to ls."""
        hit = self._containing.get(ls)
        if hit is not None:
            return hit
        out = []
        for cyc in self.cycles_containing(ls):
            for c in configurations_of(cyc, ls.k):
                lab = labeling_of(c)
                if all(lab[v] is l for v, l in zip(ls.nodes, ls.labels)):
                    out.append(c)
        self._containing[ls] = out
        return out

    # validity and refined heaviness ----------------------------------------

    def valid(self, c: Configuration) -> bool:
        if c.opposite:
            return True
        return self.t_edge(c.x, c.y) > self.params.sqrtT / self.params.delta ** 2

    def refined(self, ls: LabeledSubstructure) -> int:
        if ls.kind is Kind.PAIR:
            raise ValueError("refined heaviness is not defined for opposite pairs")
        hit = self._refined.get(ls)
        if hit is not None:
            return hit
        if ls.kind is Kind.WEDGE or (ls.kind is Kind.EDGE and ls.tiers != (0, 2)):
            val = self.true_t(ls)
        elif ls.kind is Kind.EDGE:
            val = sum(1 for c in self.configurations_containing(ls) if self._wedges_light(c))
        else:
            val = 0
            for c in self.configurations_containing(ls):
                if self.valid(c) and self._wedges_light(c) and self._edges_light(c):
                    val += 1
        self._refined[ls] = val
        return val

    def _split(self, c: Configuration) -> tuple[list, list]:
        hit = self._parts.get(c)
        if hit is None:
            subs = substructures(c, False)
            hit = ([ls for ls in subs if ls.kind is Kind.WEDGE], [ls for ls in subs if ls.kind is Kind.EDGE])
            self._parts[c] = hit
        return hit

    def _wedges_light(self, c: Configuration) -> bool:
        return all(not self.heavy(ls) for ls in self._split(c)[0])

    def _edges_light(self, c: Configuration) -> bool:
        return all(not self.heavy(ls) for ls in self._split(c)[1])

    def shifted_threshold(self, ls: LabeledSubstructure) -> float:
        return shift_for(ls.kind, self.shifts) * threshold(ls, self.params)

    def heavy(self, ls: LabeledSubstructure) -> bool:
        if ls.kind is Kind.PAIR:
            return self.true_t(ls) > self.shifted_threshold(ls)
        return self.refined(ls) > self.shifted_threshold(ls)

    def light(self, c: Configuration) -> bool:
        c = c.canonical()
        hit = self._light.get(c)
        if hit is None:
            hit = all(not self.heavy(ls) for ls in substructures(c, False))
            self._light[c] = hit
        return hit

    # local minimality -----------------------------------------------------

    def locally_minimal(self, c: Configuration) -> bool:
        c = c.canonical()
        k = c.k
        depth = self.params.llm_depth
        if k == 0:
            if c.opposite:
                return c.pair == min(opposite_pairs(c.cycle))
            # adjacent floor configurations have nothing below them; validity decides
            return True
        if 2.0 ** k >= 1.0 / self.params.delta ** 2 * (1 - 1e-12):
            return all(not self.light(Configuration(c.cycle, k - j, c.x, c.y))
                       for j in range(1, depth + 1))
        for j in range(1, min(depth, 2 * k - 1) + 1):
            if self.light(Configuration(c.cycle, k - j, c.x, c.y)):
                return False
        ext = Configuration(c.cycle, -k, c.x, c.y)
        if not self.light(ext):
            return True
        return c.pair < ext.canonical().pair

    def is_llm(self, c: Configuration) -> bool:
        c = c.canonical()
        return self.valid(c) and self.light(c) and self.locally_minimal(c)

    def enumerate_llm(self) -> set[Configuration]:
        out = set()
        for cyc in self.cycles:
            for k in self.params.kappa_indices:
                for c in configurations_of(cyc, k):
                    if self.is_llm(c):
                        out.add(c)
        return out

    def light_cycles(self) -> set[FourCycle]:
        return {cyc for cyc in self.cycles
                if any(self.light(c) for k in self.params.kappa_indices for c in configurations_of(cyc, k))}

    def llm_multiplicity(self) -> dict[FourCycle, int]:
        counts: dict[FourCycle, int] = defaultdict(int)
        for c in self.enumerate_llm():
            counts[c.cycle] += 1
        return dict(counts)

    # assignment -----------------------------------------------------------

    def kappa_terms(self, cycle: FourCycle) -> list[tuple[float, int, tuple, object]]:
        """Eq.-(1)-style terms as (value, kind rank, key, substructure)."""
        p = self.params
        terms = []
        for v in sorted(cycle):
            terms.append((p.delta ** 1.5 * self.t_node(v) / p.sqrtT, 0, (v,), v))
        for e in sorted(cycle_edges(cycle)):
            terms.append((p.delta * math.sqrt(self.t_edge(*e)), 1, e, e))
        for w in sorted(cycle_wedges(cycle)):
            terms.append((p.delta * self.t_wedge(w), 2, tuple(w), w))
        return terms

    def kappa_A(self, cycle: FourCycle) -> tuple[int, bool]:
        """Index of kappa_A and whether it was clamped to the top of the grid."""
        raw = max([self.params.base] + [t[0] for t in self.kappa_terms(cycle)])
        return self.params.grid.round_up(raw)

    def assign_xy(self, cycle: FourCycle) -> tuple[int, int]:
        p = self.params
        heavy_edges = [e for e in sorted(cycle_edges(cycle))
                       if self.t_edge(*e) >= p.sqrtT / p.delta ** 2]
        if heavy_edges:
            return heavy_edges[0]
        k, _ = self.kappa_A(cycle)
        if k == 0:
            return min(opposite_pairs(cycle))
        terms = self.kappa_terms(cycle)
        best = max(t[0] for t in terms)
        value, rank, key, sub = min((t for t in terms if t[0] == best), key=lambda t: (t[1], t[2]))
        if rank == 2:
            return (sub.u, sub.v)
        if rank == 0:
            other = opposite_of(cycle, sub)
            return (min(sub, other), max(sub, other))
        return sub

    # diagnostics ----------------------------------------------------------

    def report(self, c: Configuration) -> dict:
        c = c.canonical()
        rows = []
        for ls in substructures(c):
            row = ls.to_dict()
            row["t"] = self.true_t(ls)
            row["refined_t"] = None if ls.kind is Kind.PAIR else self.refined(ls)
            row["theta"] = threshold(ls, self.params)
            row["heavy"] = self.heavy(ls)
            rows.append(row)
        out = c.to_dict()
        out["labeling"] = {str(v): lab.name for v, lab in labeling_of(c).items()}
        out["valid"] = self.valid(c)
        out["light"] = self.light(c)
        out["llm"] = self.is_llm(c)
        out["substructures"] = rows
        return out


def is_valid(c: Configuration, g: Graph, params: Params) -> bool:
    if c.opposite:
        return True
    if not g.has_edge(c.x, c.y):
        return False
    return edge_heaviness(g, c.x, c.y) > params.sqrtT / params.delta ** 2


def refined_heaviness_exact(ls: LabeledSubstructure, g: Graph, shifts: Shifts, params: Params,
                            model: ExactModel | None = None) -> int:
    model = model or ExactModel(g, params, shifts)
    return model.refined(ls)


def is_llm_exact(c: Configuration, g: Graph, shifts: Shifts, params: Params,
                 model: ExactModel | None = None) -> bool:
    model = model or ExactModel(g, params, shifts)
    return model.is_llm(c)


def enumerate_llm(g: Graph, shifts: Shifts, params: Params) -> set[Configuration]:
    return ExactModel(g, params, shifts).enumerate_llm()


def kappa_A(cycle: FourCycle, g: Graph, params: Params) -> tuple[int, bool]:
    return ExactModel(g, params).kappa_A(canonical_cycle(*cycle))


def assign_xy(cycle: FourCycle, g: Graph, params: Params) -> tuple[int, int]:
    return ExactModel(g, params).assign_xy(canonical_cycle(*cycle))


# ---------------------------------------------------------------------------
# exclusion counters


def _wedge_between(cycle: FourCycle, v: int, edge: tuple[int, int]) -> Wedge:
    """The wedge made of node v (not on edge) and the edge it touches."""
    a, b = edge
    near = a if b == opposite_of(cycle, v) else b
    far = b if near == a else a
    return Wedge.of(v, near, far)


def _combination_cases(model: ExactModel, cycle: FourCycle, kappa: float) -> list[bool]:
    p = model.params
    T, d, sq = p.T, p.delta, p.sqrtT
    nodes = list(cycle)
    edges = cycle_edges(cycle)
    wedges = cycle_wedges(cycle)
    tn = {v: model.t_node(v) for v in nodes}
    te = {e: model.t_edge(*e) for e in edges}
    tw = {w: model.t_wedge(w) for w in wedges}

    def wedge_edges(w):
        return {normalize_edge(w.u, w.center), normalize_edge(w.center, w.v)}

    def edge_disjoint_pairs():
        a, b, c, dd = cycle
        e1, e2 = normalize_edge(a, b), normalize_edge(c, dd)
        e3, e4 = normalize_edge(b, c), normalize_edge(dd, a)
        return [(e1, e2), (e2, e1), (e3, e4), (e4, e3)]

    big_node = kappa * sq / (2 * d ** 1.5)
    small_node = T / (kappa * d ** 1.5)
    cases = [False] * 9
    # (i)
    for w1 in wedges:
        for w2 in wedges:
            if w1 != w2 and len(wedge_edges(w1) & wedge_edges(w2)) == 1:
                if tw[w1] >= kappa / (2 * d) and tw[w2] >= sq / (kappa * d):
                    cases[0] = True
    # (ii) and (viii): the only node off a wedge is the opposite of its center
    for w in wedges:
        v = opposite_of(cycle, w.center)
        if tw[w] >= kappa / (2 * d) and tn[v] >= small_node:
            cases[1] = True
        if tw[w] >= sq / (kappa * d) and tn[v] >= big_node:
            cases[7] = True
    # (iii)
    for e, f in edge_disjoint_pairs():
        if te[e] >= kappa ** 2 / (4 * d ** 2) and te[f] >= T / (kappa ** 2 * d ** 2):
            cases[2] = True
    for e in edges:
        for v in nodes:
            if v in e:
                continue
            w = _wedge_between(cycle, v, e)
            # (iv)
            if te[e] >= kappa ** 2 / (4 * d ** 2) and tn[v] >= small_node and tw[w] <= kappa / d:
                cases[3] = True
            # (vii)
            if tn[v] >= big_node and te[e] >= T / (kappa ** 2 * d ** 2) and tw[w] <= sq / (kappa * d):
                cases[6] = True
            # (ix)
            if tn[v] >= big_node and te[e] >= sq / d ** 2 and tw[w] <= kappa / d:
                cases[8] = True
    for v in nodes:
        if tn[v] < big_node:
            continue
        # (v)
        for y in cycle_neighbors(cycle, v):
            if tn[y] >= small_node and te[normalize_edge(v, y)] <= sq / d ** 2:
                cases[4] = True
        # (vi)
        y = opposite_of(cycle, v)
        if tn[y] >= small_node and model.t_pair(v, y) <= sq / d ** 2:
            cases[5] = True
    return cases


CASE_NAMES = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix")


def lemma_counters(g: Graph, params: Params, model: ExactModel | None = None) -> dict:
    """Exact counts of four-cycles matching the exclusion predicates, with bounds.

    "theta-heavy" means heaviness >= theta. Bounds are only meaningful when
    params.T equals the true count.
    """
    model = model or ExactModel(g, params)
    p = params
    edge_cut = p.sqrtT / (4 * p.delta ** 2)
    two_heavy = 0
    edge_and_wedge = 0
    per_kappa = {k: dict.fromkeys(CASE_NAMES, 0) for k in p.kappa_indices}
    union = 0
    for cyc in model.cycles:
        heavy_edges = sum(1 for e in cycle_edges(cyc) if model.t_edge(*e) >= edge_cut)
        if heavy_edges >= 2:
            two_heavy += 1
        if heavy_edges >= 1 and any(model.t_wedge(w) >= 1 / p.delta for w in cycle_wedges(cyc)):
            edge_and_wedge += 1
        hit = False
        for k in p.kappa_indices:
            cases = _combination_cases(model, cyc, p.kappa(k))
            for name, flag in zip(CASE_NAMES, cases):
                if flag:
                    per_kappa[k][name] += 1
                    hit = True
        union += hit
    log_t = log2_floor1(p.T)
    return {
        "cycles": len(model.cycles),
        "two_heavy_edges": two_heavy,
        "two_heavy_edges_bound": 328 * p.delta ** 2 * p.T,
        "heavy_edge_and_wedge": edge_and_wedge,
        "heavy_edge_and_wedge_bound": 145 * p.delta * p.T,
        "combination": {str(k): v for k, v in per_kappa.items()},
        "combination_total": union,
        "combination_bound": 576 * p.delta * log_t * p.T,
    }


def multiplicity_report(model: ExactModel) -> dict:
    mult = model.llm_multiplicity()
    over = sum(1 for m in mult.values() if m > 1)
    p = model.params
    return {
        "llm_configurations": sum(mult.values()),
        "cycles_with_llm": len(mult),
        "cycles_with_multiple_llm": over,
        "bound": 3 * p.delta * log2_floor1(p.T) ** 3 * p.T,
    }
