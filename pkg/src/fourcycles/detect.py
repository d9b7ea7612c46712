"""Two-pass node-sampling detection and its amplified driver."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .graph import FourCycle, Graph, smallest_four_cycle
from .sampling import (
    CORE_LABELS,
    Label,
    Params,
    SampleFamily,
    default_detect_delta,
    mix,
)
from .stream import EdgeStore, EdgeStream, SpaceCapExceeded, SpaceMeter

S1, S2, R1a, R1b, R2a, R2b = CORE_LABELS
_R2A, _R2B = R2a.bit, R2b.bit


def pass_array(stream: EdgeStream, pass_index: int) -> np.ndarray:
    """Read one full pass into an (m, 2) array, in the pass's order.

    Every per-edge decision below depends only on the edge itself and on
    stores finished in earlier passes, so batching a pass is equivalent to
    handling its edges one at a time.
    """
    edges = list(stream.open_pass(pass_index))
    return np.asarray(edges, dtype=np.int64).reshape(-1, 2)


class NodeMasks:
    """Label bitmasks per node and kappa index for a fixed node universe."""

    def __init__(self, fam: SampleFamily, nodes, labels=CORE_LABELS, extra: dict | None = None):
        self.nodes = np.unique(np.asarray(nodes, dtype=np.int64))
        self.masks = fam.mask_array(self.nodes, labels)
        if extra:
            # forced memberships, e.g. query anchors in oracle tests
            pos = {int(v): i for i, v in enumerate(self.nodes)}
            for v, bits in extra.items():
                if v in pos:
                    self.masks[pos[v]] |= np.int64(bits)
        self.table = dict(zip(self.nodes.tolist(), map(tuple, self.masks.tolist())))

    def rows(self, ids: np.ndarray) -> np.ndarray:
        return self.masks[np.searchsorted(self.nodes, ids)]

    def get(self, v: int, k: int) -> int:
        row = self.table.get(v)
        return 0 if row is None else row[k]


def has(masks: np.ndarray, label: Label) -> np.ndarray:
    return (masks & label.bit) != 0


def between(mu: np.ndarray, mv: np.ndarray, a: Label, b: Label) -> np.ndarray:
    return (has(mu, a) & has(mv, b)) | (has(mu, b) & has(mv, a))


class CoreSample:
    """Per-kappa stores of the two main passes, shared by detection and counting.

    ``opp[k]`` holds E[S1, S2]; ``adj[k]`` holds E[R1b, R2a], E[R2a, R2b] and
    E[R2b, R1a]; ``closing[k]`` holds pass-2 edges x-y with x in R1a, y in R1b
    that close a cycle with stored pass-1 edges.
    """

    def __init__(self, fam: SampleFamily, masks: NodeMasks, meter: SpaceMeter, cap=None):
        self.fam = fam
        self.masks = masks
        self.meter = meter
        K = len(fam.params.grid)
        self.K = K
        self.opp = [EdgeStore(meter, "pass1", cap) for _ in range(K)]
        self.adj = [EdgeStore(meter, "pass1", cap) for _ in range(K)]
        self.closing = [EdgeStore(meter, "pass2", cap) for _ in range(K)]
        self._nbr_cache: dict = {}

    def pass1(self, arr: np.ndarray) -> None:
        if len(arr) == 0:
            return
        mu, mv = self.masks.rows(arr[:, 0]), self.masks.rows(arr[:, 1])
        opp = between(mu, mv, S1, S2)
        adj = between(mu, mv, R1b, R2a) | between(mu, mv, R2a, R2b) | between(mu, mv, R2b, R1a)
        for k in range(self.K):
            for i in np.flatnonzero(opp[:, k]).tolist():
                self.opp[k].add(int(arr[i, 0]), int(arr[i, 1]))
            for i in np.flatnonzero(adj[:, k]).tolist():
                self.adj[k].add(int(arr[i, 0]), int(arr[i, 1]))

    def completion(self, k: int, x: int, y: int):
        """A pair (a, b) closing x-y-a-b-x with x in R1a and y in R1b, or None."""
        store = self.adj[k]
        bset = self._labeled_neighbors(k, x, _R2B)
        if not bset or (len(bset) == 1 and y in bset):
            return None
        for a in self._labeled_neighbors(k, y, _R2A):
            if a == x:
                continue
            hit = bset.intersection(store.neighbors(a)) - {a, y}
            if hit:
                return a, min(hit)
        return None

    def _labeled_neighbors(self, k: int, v: int, bit: int) -> frozenset:
        # pass-1 stores are frozen once pass 2 starts, so this is cached
        key = (k, v, bit)
        got = self._nbr_cache.get(key)
        if got is None:
            get = self.masks.get
            got = frozenset(u for u in self.adj[k].neighbors(v) if get(u, k) & bit)
            self._nbr_cache[key] = got
        return got

    def pass2(self, arr: np.ndarray) -> None:
        if len(arr) == 0:
            return
        mu, mv = self.masks.rows(arr[:, 0]), self.masks.rows(arr[:, 1])
        fwd = has(mu, R1a) & has(mv, R1b)
        bwd = has(mu, R1b) & has(mv, R1a)
        for k in range(self.K):
            for i in np.flatnonzero(fwd[:, k] | bwd[:, k]).tolist():
                u, v = int(arr[i, 0]), int(arr[i, 1])
                if (fwd[i, k] and self.completion(k, u, v)) or (bwd[i, k] and self.completion(k, v, u)):
                    self.closing[k].add(u, v)

    def all_edges(self) -> set[tuple[int, int]]:
        out: set[tuple[int, int]] = set()
        for stores in (self.opp, self.adj, self.closing):
            for st in stores:
                out |= st.edges
        return out

    def collected(self) -> dict:
        """Stored edge sets keyed by (store name, kappa index)."""
        out = {}
        for name, stores in (("opp", self.opp), ("adj", self.adj), ("closing", self.closing)):
            for k, st in enumerate(stores):
                out[(name, k)] = frozenset(st.edges)
        return out

    def per_kappa_counts(self) -> list[dict]:
        return [{"opp": len(self.opp[k]), "adj": len(self.adj[k]), "closing": len(self.closing[k])}
                for k in range(self.K)]


@dataclass
class DetectParams:
    T: float
    delta: float | None = None
    c1: float = 1.0
    seed: int = 0
    runs: int = 1
    cap_multiplier: float = 10.0
    calibration_runs: int = 20
    reference_space: float | None = None
    cap: float | None = None

    def __post_init__(self):
        if self.T < 1:
            raise ValueError("T must be >= 1")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.delta is not None and not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")

    def params(self) -> Params:
        delta = self.delta if self.delta is not None else default_detect_delta(self.T)
        return Params(self.T, delta, self.c1, "detect")


@dataclass
class DetectResult:
    found: bool
    witness: FourCycle | None
    meter: dict
    per_kappa: list
    pass1_edges: int
    saturated: bool
    aborted: bool = False
    collected: dict | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "witness": list(self.witness) if self.witness else None,
            "space": self.meter,
            "per_kappa": self.per_kappa,
            "pass1_edges": self.pass1_edges,
            "saturated": self.saturated,
            "aborted": self.aborted,
        }


def run_detection(stream: EdgeStream, params: DetectParams, seed: int | None = None,
                  cap: float | None = None, keep_collected: bool = False) -> DetectResult:
    p = params.params()
    fam = SampleFamily(params.seed if seed is None else seed, p)
    meter = SpaceMeter()
    meter.record_aux(6 * len(p.grid))  # one hash seed per (label, kappa)
    cap = params.cap if cap is None else cap
    arr1 = pass_array(stream, 1)
    masks = NodeMasks(fam, arr1.ravel())
    core = CoreSample(fam, masks, meter, cap)
    try:
        core.pass1(arr1)
        pass1_edges = meter.stored_edges
        core.pass2(pass_array(stream, 2))
    except SpaceCapExceeded:
        return DetectResult(False, None, meter.snapshot(), core.per_kappa_counts(),
                            meter.stored_edges, p.saturated, aborted=True)
    witness = smallest_four_cycle(Graph(core.all_edges()))
    return DetectResult(
        found=witness is not None,
        witness=witness,
        meter=meter.snapshot(),
        per_kappa=core.per_kappa_counts(),
        pass1_edges=pass1_edges,
        saturated=p.saturated,
        collected=core.collected() if keep_collected else None,
    )


def expected_pass1_edges(m: int, params: Params) -> float:
    """Union-bound estimate of pass-1 stored edges: four label classes per kappa.

    An edge lands in class (a, b) with probability 2ab - (ab)^2; the classes
    are E[S1, S2], E[R1b, R2a], E[R2a, R2b] and E[R2b, R1a].
    """
    def both(a, b):
        return 2 * a * b - (a * b) ** 2

    total = 0.0
    for k in params.kappa_indices:
        p1, p2 = params.p1(k), params.p2(k)
        total += 3 * both(p1, p2) + both(p2, p2)
    return m * total


def default_runs(n: int) -> int:
    return max(1, math.ceil(3 * math.log2(max(n, 2))))


@dataclass
class AmplifiedResult:
    found: bool
    witness: FourCycle | None
    runs: int
    aborted: int
    reference_space: float
    cap: float
    peaks: list

    def __bool__(self) -> bool:
        return self.found

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "witness": list(self.witness) if self.witness else None,
            "runs": self.runs,
            "aborted": self.aborted,
            "reference_space": self.reference_space,
            "cap": self.cap,
            "peak_edges": self.peaks,
        }


def calibrate_space(stream: EdgeStream, params: DetectParams) -> float:
    """Mean peak stored edges over uncapped calibration runs."""
    peaks = [run_detection(stream, params, seed=mix(params.seed, 1_000_003 + i), cap=None).meter["peak_edges"]
             for i in range(params.calibration_runs)]
    return float(np.mean(peaks)) if peaks else 0.0


def amplified_detection(stream: EdgeStream, params: DetectParams, stop_early: bool = True) -> AmplifiedResult:
    """Independent runs with a space cap; true iff a non-aborted run finds a cycle.

    With ``stop_early`` the loop ends at the first successful run, which
    cannot change the answer.
    """
    M = params.reference_space
    if M is None:
        M = calibrate_space(stream, params)
    cap = max(params.cap_multiplier * M, 1.0)
    aborted = 0
    peaks = []
    witness = None
    for i in range(params.runs):
        res = run_detection(stream, params, seed=mix(params.seed, i), cap=cap)
        peaks.append(res.meter["peak_edges"])
        if res.aborted:
            aborted += 1
            continue
        if res.found and witness is None:
            witness = res.witness
            if stop_early:
                break
    return AmplifiedResult(witness is not None, witness, len(peaks), aborted, M, cap, peaks)
