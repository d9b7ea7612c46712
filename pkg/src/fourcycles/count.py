"""Three-pass node-sampling counter, its estimator and the median driver."""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field

import numpy as np

from .config import Configuration, ExactModel
from .detect import CoreSample, NodeMasks, R1a, R1b, R2a, R2b, S1, S2, pass_array
from .graph import canonical_cycle
from .oracles import OracleConfig, OracleStack
from .sampling import NODE_LABELS, CORE_LABELS, Params, SampleFamily, Shifts, default_count_delta, draw_shifts, mix
from .stream import EdgeStream, SpaceCapExceeded, SpaceMeter


def round_epsilon(epsilon: float) -> float:
    """Largest power of two not above epsilon."""
    if not 0 < epsilon <= 1:
        raise ValueError("epsilon must lie in (0, 1]")
    return 2.0 ** math.floor(math.log2(epsilon) + 1e-12)


@dataclass
class CountParams:
    T: float
    epsilon: float = 0.5
    delta: float | None = None
    c: float = 1.0
    seed: int = 0
    oracle_mode: str = "reference"
    median_runs: int = 1
    oracle_profile: str = "desk"
    sample_eps: float = 0.25
    cap_multiplier: float | None = None
    calibration_runs: int = 5

    def __post_init__(self):
        if self.T < 1:
            raise ValueError("T must be >= 1")
        if self.oracle_mode not in ("reference", "streaming"):
            raise ValueError(f"unknown oracle mode {self.oracle_mode!r}")
        if self.median_runs < 1 or self.median_runs % 2 == 0:
            raise ValueError("median_runs must be odd and positive")
        self.epsilon = round_epsilon(self.epsilon)

    def params(self) -> Params:
        delta = self.delta if self.delta is not None else default_count_delta(self.T, self.epsilon)
        return Params(self.T, delta, self.c, "count")

    def oracle_config(self, n: int) -> OracleConfig:
        p = self.params()
        if self.oracle_profile == "paper":
            return OracleConfig.paper(p, n)
        return OracleConfig.desk(p, n, self.sample_eps)


@dataclass
class CountResult:
    estimate: float
    X: int
    p: float
    saturated: bool
    realized: list
    accepted: list
    meter: dict
    oracle: dict | None = None
    shifts: Shifts | None = None
    aborted: bool = False

    def to_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "X": self.X,
            "p": self.p,
            "saturated": self.saturated,
            "realized": len(self.realized),
            "space": self.meter,
            "oracle": self.oracle,
            "shifts": None if self.shifts is None else [self.shifts.s1, self.shifts.s2, self.shifts.s3],
            "aborted": self.aborted,
        }


def realized_configuration_scan(core: CoreSample) -> list[Configuration]:
    """Configurations whose whole labeling is realized by the stored samples."""
    get = core.masks.get
    found: set[Configuration] = set()
    for k in range(core.K):
        # opposite pairs: x < y in S1 with two common S2 neighbors in E[S1, S2]
        store = core.opp[k]
        s2_nbrs = {}
        for x in store.adj:
            if get(x, k) & S1.bit:
                s2_nbrs[x] = sorted(u for u in store.adj[x] if get(u, k) & S2.bit)
        xs = sorted(s2_nbrs)
        for i, x in enumerate(xs):
            nx = set(s2_nbrs[x])
            if len(nx) < 2:
                continue
            for y in xs[i + 1:]:
                common = [u for u in s2_nbrs[y] if u in nx]
                for a in range(len(common)):
                    for b in range(a + 1, len(common)):
                        cyc = canonical_cycle(x, common[a], y, common[b])
                        found.add(Configuration(cyc, k, x, y))
        # adjacent pairs: closing edges x-y, x in R1a, y in R1b, x < y
        adj = core.adj[k]
        for u, v in core.closing[k].edges:
            for x, y in ((u, v), (v, u)):
                if x > y or not (get(x, k) & R1a.bit and get(y, k) & R1b.bit):
                    continue
                for a in adj.neighbors(y):
                    if a == x or not get(a, k) & R2a.bit:
                        continue
                    for b in adj.neighbors(x):
                        if b in (y, a) or not get(b, k) & R2b.bit:
                            continue
                        if adj.has(a, b):
                            found.add(Configuration(canonical_cycle(x, y, a, b), k, x, y))
    return sorted(found, key=lambda c: (c.cycle, c.k, c.x, c.y))


def horvitz_thompson(accepted, params: Params) -> float:
    """Sum of inverse realization probabilities, using clamped probabilities."""
    return sum(1.0 / (params.p1(c.k) * params.p2(c.k)) ** 2 for c in accepted)


def run_counting(stream: EdgeStream, cp: CountParams, seed: int | None = None, shifts: Shifts | None = None,
                 model: ExactModel | None = None, cap=None) -> CountResult:
    """One run. ``model`` is the exact reference used in reference mode.

    Unsaturated runs return X / p^2 with p the pre-clamp pair probability.
    Saturated runs return the Horvitz-Thompson sum over accepted
    configurations, which stays unbiased when probabilities are clamped.
    """
    seed = cp.seed if seed is None else seed
    params = cp.params()
    meter = SpaceMeter()
    arr1 = pass_array(stream, 1)
    n = len(np.unique(arr1)) if len(arr1) else 0
    config = cp.oracle_config(n)
    if shifts is None:
        shifts = draw_shifts(np.random.default_rng([seed, 7]), config.L, config.L1, config.L2)
    streaming = cp.oracle_mode == "streaming"
    fam = config.family(seed, params) if streaming else SampleFamily(seed, params)
    labels = NODE_LABELS if streaming else CORE_LABELS
    masks = NodeMasks(fam, arr1.ravel(), labels)
    meter.record_aux(len(labels) * len(params.grid))
    core = CoreSample(fam, masks, meter, cap)
    stack = OracleStack(fam, config, masks, meter, shifts, cap=cap) if streaming else None
    try:
        core.pass1(arr1)
        if stack:
            stack.pass1(arr1)
        arr2 = pass_array(stream, 2)
        core.pass2(arr2)
        if stack:
            stack.pass2(arr2)
        realized = realized_configuration_scan(core)
        if stack:
            stack.prepare(stack.candidate_edges(realized))
            stack.pass3(pass_array(stream, 3))
    except SpaceCapExceeded:
        return CountResult(float("nan"), 0, params.pair_probability, params.saturated, [], [],
                           meter.snapshot(), None, shifts, aborted=True)
    if stack:
        accepted = [c for c in realized if stack.is_llm(c)]
    else:
        if model is None:
            model = ExactModel(stream.to_graph(), params, shifts)
        elif model.shifts != shifts:
            model = model.with_shifts(shifts)
        accepted = [c for c in realized if model.is_llm(c)]
    X = len(accepted)
    p = params.pair_probability
    estimate = horvitz_thompson(accepted, params) if params.saturated else X / p ** 2
    return CountResult(estimate, X, p, params.saturated, realized, accepted, meter.snapshot(),
                       stack.report() if stack else None, shifts)


class MedianAbort(RuntimeError):
    """More than half of the median runs hit the space cap."""


@dataclass
class MedianResult:
    estimate: float
    estimates: list
    aborted: int
    cap: float | None
    runs: list = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {"estimate": self.estimate, "estimates": self.estimates, "aborted": self.aborted,
                "cap": self.cap, "runs": [r.to_dict() for r in self.runs]}


def median_estimate(stream: EdgeStream, cp: CountParams, shifts: Shifts | None = None,
                    model: ExactModel | None = None) -> MedianResult:
    """Median over cp.median_runs independent runs, dropping runs over the space cap."""
    if model is None and cp.oracle_mode == "reference":
        model = ExactModel(stream.to_graph(), cp.params(), shifts or Shifts())
    cap = None
    if cp.cap_multiplier is not None:
        peaks = [run_counting(stream, cp, seed=mix(cp.seed, 2_000_003 + i), shifts=shifts, model=model)
                 .meter["peak_edges"] for i in range(cp.calibration_runs)]
        cap = max(cp.cap_multiplier * float(np.mean(peaks)), 1.0)
    runs = [run_counting(stream, cp, seed=mix(cp.seed, i), shifts=shifts, model=model, cap=cap)
            for i in range(cp.median_runs)]
    ok = [r for r in runs if not r.aborted]
    aborted = len(runs) - len(ok)
    if aborted * 2 > len(runs):
        raise MedianAbort(f"{aborted} of {len(runs)} runs exceeded the space cap")
    estimates = [r.estimate for r in ok]
    return MedianResult(statistics.median(estimates), estimates, aborted, cap, runs)
