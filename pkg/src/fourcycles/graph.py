"""Static graphs and exact four-cycle machinery.

Everything here is deterministic and exact. The randomized parts of the
package are validated against these functions.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Iterable, NamedTuple


class GraphInputError(ValueError):
    """Raised for malformed graph input (self-loops, unknown nodes, bad lines)."""


class Wedge(NamedTuple):
    """A two-edge path u - center - v, stored with u < v."""

    u: int
    center: int
    v: int

    @classmethod
    def of(cls, a: int, center: int, b: int) -> "Wedge":
        if a == b:
            raise GraphInputError("wedge endpoints must differ")
        return cls(min(a, b), center, max(a, b))


def normalize_edge(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise GraphInputError(f"self-loop on node {u}")
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph over non-negative integer node ids.

    Duplicate and reversed edges are collapsed; the number of collapsed
    entries is kept in ``duplicates``. Self-loops raise GraphInputError.
    The graph is not meant to be mutated after construction.
    """

    def __init__(self, edges: Iterable[tuple[int, int]] = (), nodes: Iterable[int] = (),
                 meta: dict | None = None):
        self.meta = dict(meta or {})
        adj: dict[int, set[int]] = defaultdict(set)
        edge_set: set[tuple[int, int]] = set()
        duplicates = 0
        for v in nodes:
            _check_id(v)
            adj[v]
        for u, v in edges:
            _check_id(u)
            _check_id(v)
            e = normalize_edge(u, v)
            if e in edge_set:
                duplicates += 1
                continue
            edge_set.add(e)
            adj[e[0]].add(e[1])
            adj[e[1]].add(e[0])
        self.edges = frozenset(edge_set)
        self.duplicates = duplicates
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}
        self._sorted = {v: tuple(sorted(ns)) for v, ns in self._adj.items()}
        self.nodes = tuple(sorted(self._adj))

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return len(self.edges)

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Sorted neighbor tuple of v."""
        self.require_node(v)
        return self._sorted[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        self.require_node(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self.neighbor_set(v))

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def require_node(self, v: int) -> None:
        if v not in self._adj:
            raise GraphInputError(f"unknown node {v}")

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        return cls(parse_edge_list(text.splitlines()))

    @classmethod
    def from_file(cls, path) -> "Graph":
        return cls(read_edge_list(path))


def _check_id(v) -> None:
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise GraphInputError(f"node ids must be non-negative integers, got {v!r}")


def parse_edge_list(lines: Iterable[str]) -> list[tuple[int, int]]:
    """Parse "u v" lines. Blank lines and '#' comments are skipped.

    Duplicates are kept here; Graph/EdgeStream decide how to collapse them.
    """
    out = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) < 2:
            raise GraphInputError(f"line {lineno}: expected two node ids, got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphInputError(f"line {lineno}: non-integer token in {line!r}") from None
        if u < 0 or v < 0:
            raise GraphInputError(f"line {lineno}: negative node id in {line!r}")
        if u == v:
            raise GraphInputError(f"line {lineno}: self-loop on node {u}")
        out.append((u, v))
    return out


def read_edge_list(path) -> list[tuple[int, int]]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise GraphInputError(f"cannot read {path}: {exc}") from exc
    return parse_edge_list(text.splitlines())


# ---------------------------------------------------------------------------
# four-cycles

FourCycle = tuple[int, int, int, int]


def canonical_cycle(a: int, b: int, c: int, d: int) -> FourCycle:
    """Canonical representative of the cycle a-b-c-d-a.

    The minimum node goes first and the orientation puts the smaller of its
    two cycle-neighbors second.
    """
    seq = (a, b, c, d)
    if len(set(seq)) != 4:
        raise GraphInputError(f"four-cycle needs four distinct nodes, got {seq}")
    i = seq.index(min(seq))
    rot = seq[i:] + seq[:i]
    if rot[1] > rot[3]:
        rot = (rot[0], rot[3], rot[2], rot[1])
    return rot


def cycle_edges(cycle: FourCycle) -> list[tuple[int, int]]:
    a, b, c, d = cycle
    return [normalize_edge(a, b), normalize_edge(b, c), normalize_edge(c, d), normalize_edge(d, a)]


def cycle_wedges(cycle: FourCycle) -> list[Wedge]:
    a, b, c, d = cycle
    return [Wedge.of(d, a, b), Wedge.of(a, b, c), Wedge.of(b, c, d), Wedge.of(c, d, a)]


def opposite_pairs(cycle: FourCycle) -> list[tuple[int, int]]:
    a, b, c, d = cycle
    return [normalize_edge(a, c), normalize_edge(b, d)]


def opposite_of(cycle: FourCycle, v: int) -> int:
    i = cycle.index(v)
    return cycle[(i + 2) % 4]


def cycle_neighbors(cycle: FourCycle, v: int) -> tuple[int, int]:
    i = cycle.index(v)
    return cycle[(i + 1) % 4], cycle[(i + 3) % 4]


def is_four_cycle_of(g: Graph, cycle: FourCycle) -> bool:
    return len(set(cycle)) == 4 and all(g.has_edge(u, v) for u, v in cycle_edges(cycle))


def onion_width(g: Graph, u: int, v: int) -> int:
    """Number of common neighbors of u and v (wedges with endpoints u, v)."""
    g.require_node(u)
    g.require_node(v)
    if u == v:
        raise GraphInputError("onion width needs two distinct nodes")
    a, b = g.neighbor_set(u), g.neighbor_set(v)
    if len(a) > len(b):
        a, b = b, a
    return sum(1 for w in a if w in b)


def onion_size(g: Graph, u: int, v: int) -> int:
    return comb(onion_width(g, u, v), 2)


def codegrees(g: Graph) -> dict[tuple[int, int], int]:
    """Map (u, v) with u < v to |N(u) & N(v)|, only for pairs with a common neighbor.

    Cost is O(sum of squared degrees).
    """
    cod: dict[tuple[int, int], int] = defaultdict(int)
    for w in g.nodes:
        for u, v in combinations(g.neighbors(w), 2):
            cod[(u, v)] += 1
    return dict(cod)


def exact_four_cycle_count(g: Graph) -> int:
    """Half the sum of onion sizes over all node pairs."""
    total = sum(comb(c, 2) for c in codegrees(g).values())
    assert total % 2 == 0
    return total // 2


def enumerate_four_cycles(g: Graph) -> list[FourCycle]:
    """Every distinct four-cycle once, in canonical form.

    Worst case O(sum over pairs of ow(u, v)^2). Each cycle is emitted from
    the opposite pair that contains its minimum node.
    """
    out = []
    for a in g.nodes:
        # opposite partners c > a reachable through two distinct middles > a
        mids: dict[int, list[int]] = defaultdict(list)
        for w in g.neighbors(a):
            if w < a:
                continue
            for c in g.neighbors(w):
                if c > a:
                    mids[c].append(w)
        for c, ws in mids.items():
            if len(ws) < 2:
                continue
            for b, d in combinations(sorted(ws), 2):
                out.append((a, b, c, d))
    out.sort()
    return out


# ---------------------------------------------------------------------------
# heaviness


def node_heaviness(g: Graph, v: int) -> int:
    """Number of four-cycles through v: sum over other nodes u of C(ow(u, v), 2)."""
    g.require_node(v)
    counts: dict[int, int] = defaultdict(int)
    for w in g.neighbors(v):
        for u in g.neighbors(w):
            if u != v:
                counts[u] += 1
    return sum(comb(c, 2) for c in counts.values())


def edge_heaviness(g: Graph, u: int, v: int) -> int:
    """Number of four-cycles through edge (u, v): sum over a in N(u)-v of (ow(a, v) - 1)."""
    if not g.has_edge(u, v):
        raise GraphInputError(f"edge ({u}, {v}) not in graph")
    nv = g.neighbor_set(v)
    total = 0
    for a in g.neighbors(u):
        if a == v:
            continue
        total += sum(1 for b in g.neighbor_set(a) if b in nv and b != u)
    return total


def wedge_heaviness(g: Graph, w: Wedge) -> int:
    if not (g.has_edge(w.u, w.center) and g.has_edge(w.center, w.v)):
        raise GraphInputError(f"wedge {tuple(w)} not in graph")
    return onion_width(g, w.u, w.v) - 1


def pair_heaviness(g: Graph, u: int, v: int) -> int:
    """Cycles having u and v as opposite nodes, i.e. the onion size."""
    return onion_size(g, u, v)


def true_heaviness(g: Graph, x) -> int:
    """Heaviness of a node (int), edge (2-tuple) or wedge (Wedge or 3-tuple path)."""
    if isinstance(x, int):
        return node_heaviness(g, x)
    if isinstance(x, Wedge):
        return wedge_heaviness(g, x)
    x = tuple(x)
    if len(x) == 2:
        return edge_heaviness(g, *x)
    if len(x) == 3:
        return wedge_heaviness(g, Wedge.of(*x))
    raise GraphInputError(f"cannot interpret substructure {x!r}")


def heaviness_by_enumeration(g: Graph, cycles: list[FourCycle] | None = None):
    """Node, edge and wedge heaviness tallied directly from the cycle list."""
    if cycles is None:
        cycles = enumerate_four_cycles(g)
    nodes: dict[int, int] = defaultdict(int)
    edges: dict[tuple[int, int], int] = defaultdict(int)
    wedges: dict[Wedge, int] = defaultdict(int)
    for cyc in cycles:
        for v in cyc:
            nodes[v] += 1
        for e in cycle_edges(cyc):
            edges[e] += 1
        for w in cycle_wedges(cyc):
            wedges[w] += 1
    return dict(nodes), dict(edges), dict(wedges)


def smallest_four_cycle(g: Graph) -> FourCycle | None:
    """The lexicographically smallest canonical four-cycle, or None if there is none."""
    for a in g.nodes:
        mids: dict[int, list[int]] = defaultdict(list)
        for w in g.neighbors(a):
            if w < a:
                continue
            for c in g.neighbors(w):
                if c > a:
                    mids[c].append(w)
        best = None
        for c, ws in mids.items():
            if len(ws) >= 2:
                ws.sort()
                cand = (a, ws[0], c, ws[1])
                if best is None or cand < best:
                    best = cand
        if best is not None:
            return best
    return None
