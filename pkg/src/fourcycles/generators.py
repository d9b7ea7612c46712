"""Graph builders: the hard instances, a non-monotone heaviness gadget, random graphs.

Every builder returns a Graph whose ``meta`` carries the declared four-cycle
count under "T" (None when unknown, e.g. for G(n, p)).
"""

from __future__ import annotations

import math
from itertools import product

import numpy as np

from .graph import Graph, GraphInputError


def gen_onion(kappa: int) -> Graph:
    """K_{2,kappa}: hubs 0 and 1, middles 2..kappa+1."""
    if kappa < 2:
        raise GraphInputError("an onion needs width >= 2")
    edges = [(h, 2 + i) for h in (0, 1) for i in range(kappa)]
    return Graph(edges, meta={"kind": "onion", "kappa": kappa, "T": math.comb(kappa, 2)})


def gen_overlap(a: int, kappa: int, copies: int = 1) -> Graph:
    """``copies`` disjoint copies of K_{a,kappa}."""
    if a < 1 or kappa < 1 or copies < 1:
        raise GraphInputError("overlap needs a, kappa, copies >= 1")
    edges = []
    block = a + kappa
    for c in range(copies):
        off = c * block
        edges += [(off + i, off + a + j) for i in range(a) for j in range(kappa)]
    T = copies * math.comb(a, 2) * math.comb(kappa, 2)
    return Graph(edges, meta={"kind": "overlap", "a": a, "kappa": kappa, "copies": copies, "T": T})


def gen_heavy_edge(T_target: int) -> Graph:
    """Edge (0, 1) plus T_target disjoint paths 0 - a - b - 1."""
    if T_target < 1:
        raise GraphInputError("heavy-edge instance needs T >= 1")
    edges = [(0, 1)]
    for i in range(T_target):
        a, b = 2 + 2 * i, 3 + 2 * i
        edges += [(0, a), (a, b), (b, 1)]
    return Graph(edges, meta={"kind": "heavy", "T": T_target, "heavy_edge": (0, 1)})


def gen_gnp(n: int, p: float, seed: int = 0) -> Graph:
    if not 0 <= p <= 1:
        raise GraphInputError("p must lie in [0, 1]")
    if n < 0:
        raise GraphInputError("n must be non-negative")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    edges = list(zip(iu[keep].tolist(), ju[keep].tolist()))
    T = 3 * math.comb(n, 4) if p == 1 else (0 if p == 0 else None)
    return Graph(edges, nodes=range(n), meta={"kind": "gnp", "n": n, "p": p, "seed": seed, "T": T})


def gen_tree(n: int, seed: int = 0) -> Graph:
    """Random recursive tree on n nodes."""
    rng = np.random.default_rng(seed)
    edges = [(int(rng.integers(i)), i) for i in range(1, n)]
    return Graph(edges, nodes=range(n), meta={"kind": "tree", "n": n, "T": 0})


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise GraphInputError("a cycle needs n >= 3")
    edges = [(i, (i + 1) % n) for i in range(n)]
    return Graph(edges, meta={"kind": "cycle", "n": n, "T": 1 if n == 4 else 0})


def gen_path(n: int, offset: int = 0) -> Graph:
    edges = [(offset + i, offset + i + 1) for i in range(n - 1)]
    return Graph(edges, nodes=range(offset, offset + n), meta={"kind": "path", "n": n, "T": 0})


def gen_incidence(q: int) -> Graph:
    """Point-line incidence graph of the projective plane over GF(q), q prime.

    Two lines meet in exactly one point, so the graph has no four-cycle.
    """
    if q < 2 or any(q % d == 0 for d in range(2, int(q ** 0.5) + 1)):
        raise GraphInputError("q must be prime")
    pts = []
    for v in product(range(q), repeat=3):
        if any(v):
            # keep the representative whose first non-zero coordinate is 1
            first = next(c for c in v if c)
            if first == 1:
                pts.append(v)
    index = {p: i for i, p in enumerate(pts)}
    N = len(pts)
    edges = []
    for li, line in enumerate(pts):
        for p in pts:
            if sum(a * b for a, b in zip(line, p)) % q == 0:
                edges.append((index[p], N + li))
    return Graph(edges, meta={"kind": "incidence", "q": q, "T": 0})


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    off = 0
    total = 0
    for g in graphs:
        edges += [(u + off, v + off) for u, v in g.edges]
        off += (max(g.nodes) + 1) if g.nodes else 0
        t = g.meta.get("T")
        total = None if total is None or t is None else total + t
    nodes = range(off)
    return Graph(edges, nodes=nodes, meta={"kind": "union", "T": total})


def pad_to_edges(g: Graph, m_target: int) -> Graph:
    """Append a disjoint path so the edge count reaches m_target, keeping T."""
    missing = m_target - g.m
    if missing < 0:
        raise GraphInputError(f"graph already has {g.m} > {m_target} edges")
    if missing == 0:
        return g
    base = (max(g.nodes) + 1) if g.nodes else 0
    path = [(base + i, base + i + 1) for i in range(missing)]
    return Graph(list(g.edges) + path, nodes=g.nodes, meta=dict(g.meta, padded_to=m_target))


# ---------------------------------------------------------------------------
# non-monotone gadget


def nonmonotone_parameters(cycles: int, onions: int, width: int):
    """Find (T, delta) making (v, k, S2) heavy, light, heavy at k = 0, 1, 2.

    v carries ``cycles`` edge-disjoint four-cycles plus ``onions`` onions of
    the given width. Labeled S2, v counts onion cycles only while the
    hub-to-hub wedges (heaviness width-1, threshold sqrt(T)/(kappa delta))
    are light, i.e. at small kappa. Shifts are taken as 1.

    Returns None when no (T, delta) on the search grid works.
    """
    onion_cycles = onions * math.comb(width, 2)
    wedge_t = width - 1
    best = None
    for delta in np.linspace(0.05, 0.95, 181):
        for b in np.linspace(2.0005, 4.0, 800):
            # b = T^(1/4); three grid points need b > 2
            if not (wedge_t <= b / delta < 2 * wedge_t):
                continue
            theta0 = b ** 3 / delta ** 1.5
            if cycles + onion_cycles > theta0 and cycles <= theta0 / 2 and cycles > theta0 / 4:
                # prefer the point with the widest relative margins
                margin = min((cycles + onion_cycles) / theta0 - 1, 1 - 2 * cycles / theta0,
                             4 * cycles / theta0 - 1, b / delta / wedge_t - 1,
                             1 - b / delta / (2 * wedge_t))
                if best is None or margin > best[0]:
                    best = (margin, float(b ** 4), float(delta))
    if best is None:
        return None
    return best[1], best[2]


def gen_nonmonotone(cycles: int = 6, onions: int = 2, width: int = 5, T=None, delta=None) -> Graph:
    """Node 0 with edge-disjoint four-cycles and onions of the given width at it.

    meta["targets"] holds the three kappa indices, the label name and the
    (T, delta) under which the heavy/light/heavy pattern appears.
    """
    if cycles < 1 or onions < 0 or width < 2:
        raise GraphInputError("need cycles >= 1, onions >= 0, width >= 2")
    edges = []
    nxt = 1
    for _ in range(cycles):
        a, b, c = nxt, nxt + 1, nxt + 2
        nxt += 3
        edges += [(0, a), (a, b), (b, c), (c, 0)]
    for _ in range(onions):
        hub = nxt
        mids = list(range(nxt + 1, nxt + 1 + width))
        nxt += 1 + width
        edges += [(x, m) for m in mids for x in (0, hub)]
    if T is None or delta is None:
        found = nonmonotone_parameters(cycles, onions, width) if onions else None
        if found is None and onions:
            raise GraphInputError("no parameters reproduce the non-monotone pattern")
        if found is not None:
            T, delta = found
    meta = {
        "kind": "nonmonotone",
        "cycles": cycles,
        "onions": onions,
        "width": width,
        "T": cycles + onions * math.comb(width, 2),
        "node": 0,
        "targets": None if T is None else {"k": [0, 1, 2], "label": "S2", "T": T, "delta": delta},
    }
    return Graph(edges, meta=meta)


# ---------------------------------------------------------------------------
# spec strings

_BUILDERS = {
    "onion": (gen_onion, {"k": ("kappa", int)}),
    "overlap": (gen_overlap, {"a": ("a", int), "k": ("kappa", int), "copies": ("copies", int)}),
    "heavy": (gen_heavy_edge, {"T": ("T_target", int)}),
    "gnp": (gen_gnp, {"n": ("n", int), "p": ("p", float), "seed": ("seed", int)}),
    "nonmonotone": (gen_nonmonotone, {"cycles": ("cycles", int), "onions": ("onions", int),
                                      "width": ("width", int)}),
    "tree": (gen_tree, {"n": ("n", int), "seed": ("seed", int)}),
    "cycle": (gen_cycle, {"n": ("n", int)}),
    "path": (gen_path, {"n": ("n", int)}),
    "incidence": (gen_incidence, {"q": ("q", int)}),
}


def parse_generator_spec(spec: str) -> tuple[str, dict]:
    """Parse 'kind:key=value,...' into (kind, keyword arguments)."""
    kind, _, rest = spec.partition(":")
    kind = kind.strip()
    if kind not in _BUILDERS:
        raise GraphInputError(f"unknown generator {kind!r}; known: {', '.join(sorted(_BUILDERS))}")
    _, keys = _BUILDERS[kind]
    kwargs = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, eq, value = item.partition("=")
        if not eq or key not in keys:
            raise GraphInputError(f"bad parameter {item!r} for generator {kind}")
        name, cast = keys[key]
        try:
            kwargs[name] = cast(value)
        except ValueError:
            raise GraphInputError(f"cannot parse {value!r} for {kind}.{key}") from None
    return kind, kwargs


def is_generator_spec(text: str) -> bool:
    return text.partition(":")[0] in _BUILDERS


def build(spec: str) -> Graph:
    kind, kwargs = parse_generator_spec(spec)
    return _BUILDERS[kind][0](**kwargs)
