"""Edge-sampling four-cycle estimator used as a comparison point.

Pass 1 keeps each edge with probability p = min(1, c / T^(1/3)). Pass 2
counts, for every arriving edge (u, v), the sampled three-edge paths from u
to v. Each four-cycle is completed once by each of its four edges, and each
such path survives with probability p^3, so total / (4 p^3) is unbiased.
"""

from __future__ import annotations

from dataclasses import dataclass

from .detect import pass_array
from .sampling import edge_uniform, mix
from .stream import EdgeStore, EdgeStream, SpaceMeter


@dataclass
class BaselineResult:
    estimate: float
    paths: int
    p: float
    meter: dict

    def to_dict(self) -> dict:
        return {"estimate": self.estimate, "paths": self.paths, "p": self.p, "space": self.meter}


def baseline_probability(T: float, c: float = 1.0) -> float:
    if T < 1:
        raise ValueError("T must be >= 1")
    return min(1.0, c / T ** (1 / 3))


def edge_sampling_run(stream: EdgeStream, T: float, seed: int = 0, c: float = 1.0) -> BaselineResult:
    p = baseline_probability(T, c)
    meter = SpaceMeter()
    meter.record_aux(1)
    sample = EdgeStore(meter, "sample")
    arr = pass_array(stream, 1)
    if len(arr):
        keep = edge_uniform(mix(seed, 0x5A17), arr) < p
        for u, v in arr[keep].tolist():
            sample.add(u, v)
    adj = sample.adj
    paths = 0
    for u, v in pass_array(stream, 2).tolist():
        nv = adj.get(v)
        if not nv:
            continue
        for a in adj.get(u, ()):
            if a == v:
                continue
            for b in adj.get(a, ()):
                if b != u and b in nv:
                    paths += 1
    return BaselineResult(paths / (4 * p ** 3) if p > 0 else 0.0, paths, p, meter.snapshot())


def edge_sampling_estimate(stream: EdgeStream, T: float, seed: int = 0, c: float = 1.0) -> float:
    return edge_sampling_run(stream, T, seed, c).estimate
