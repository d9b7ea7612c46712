"""Kappa grid, per-kappa sampling probabilities, hash-based set membership, shifts."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_INV53 = 2.0 ** -53


def splitmix64(x: int) -> int:
    z = (x + _GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def splitmix64_array(x: np.ndarray) -> np.ndarray:
    z = x.astype(np.uint64) + np.uint64(_GOLDEN)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def mix(*parts: int) -> int:
    """Fold integers into one 64-bit seed with splitmix64 avalanche steps."""
    h = 0x243F6A8885A308D3
    for p in parts:
        h = splitmix64(h ^ (p & MASK64))
    return h


def unit_hash(seed: int, key: int) -> float:
    """Deterministic value in [0, 1) for (seed, key)."""
    return (splitmix64((seed ^ key) & MASK64) >> 11) * _INV53


def edge_uniform(seed: int, arr: np.ndarray) -> np.ndarray:
    """Hash values in [0, 1) for the undirected edges of an (m, 2) array."""
    arr = np.asarray(arr, dtype=np.int64).reshape(-1, 2)
    a = np.minimum(arr[:, 0], arr[:, 1]).astype(np.uint64)
    b = np.maximum(arr[:, 0], arr[:, 1]).astype(np.uint64)
    with np.errstate(over="ignore"):
        h = splitmix64_array((a << np.uint64(32)) ^ b)
        h = splitmix64_array(h ^ np.uint64(seed & MASK64))
    return (h >> np.uint64(11)).astype(np.float64) * _INV53


# ---------------------------------------------------------------------------
# labels


class Label(enum.Enum):
    S1 = (0, 1)
    S2 = (1, 2)
    R1a = (2, 1)
    R1b = (3, 1)
    R2a = (4, 2)
    R2b = (5, 2)
    # oracle-private node sets
    S1p = (6, 1)
    S2p = (7, 2)
    R1ap = (8, 1)
    R1bp = (9, 1)
    R2ap = (10, 2)
    R2bp = (11, 2)
    Q1a = (12, 1)
    Q1b = (13, 1)
    Q1w = (14, 1)
    Q2w = (15, 2)
    # edge-sampling label; its rate is set per probability class, not per tier
    Qedge = (16, 0)

    @property
    def id(self) -> int:
        return self.value[0]

    @property
    def tier(self) -> int:
        return self.value[1]

    @property
    def bit(self) -> int:
        return 1 << self.value[0]

    @property
    def primed(self) -> "Label":
        return _PRIMED[self]

    def __repr__(self) -> str:
        return self.name


CORE_LABELS = (Label.S1, Label.S2, Label.R1a, Label.R1b, Label.R2a, Label.R2b)
PRIMED_LABELS = (Label.S1p, Label.S2p, Label.R1ap, Label.R1bp, Label.R2ap, Label.R2bp)
NODE_LABELS = tuple(lab for lab in Label if lab is not Label.Qedge)
_PRIMED = dict(zip(CORE_LABELS, PRIMED_LABELS))
TIER1 = frozenset({Label.S1, Label.R1a, Label.R1b})
TIER2 = frozenset({Label.S2, Label.R2a, Label.R2b})


# ---------------------------------------------------------------------------
# kappa grid


@dataclass(frozen=True)
class IndexSet:
    """Values T^(1/4) * 2^k for k = 0..K, kept as reals."""

    T: float
    values: tuple[float, ...]

    @property
    def base(self) -> float:
        return self.values[0]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def kappa(self, k: int) -> float:
        """Grid value for any integer exponent, including the extended k < 0."""
        return self.base * 2.0 ** k

    @property
    def max_index(self) -> int:
        return len(self.values) - 1

    def round_up(self, raw: float) -> tuple[int, bool]:
        """Index of the smallest grid value >= raw; clamps to the top with a flag."""
        for k, val in enumerate(self.values):
            if raw <= val * (1 + 1e-12):
                return k, False
        return self.max_index, True


def index_set(T: float) -> IndexSet:
    if not T or T < 1:
        raise ValueError(f"the count lower bound T must be >= 1, got {T}")
    base = T ** 0.25
    top = math.ceil(math.log2(base) - 1e-12) if base > 1 else 0
    return IndexSet(float(T), tuple(base * 2.0 ** k for k in range(top + 1)))


# ---------------------------------------------------------------------------
# probabilities

EXPONENT = {"detect": 1.5, "count": 3.5}


@dataclass(frozen=True)
class ProbabilityPair:
    p1: float
    p2: float
    p1_raw: float
    p2_raw: float

    @property
    def saturated(self) -> bool:
        return self.p1_raw >= 1 or self.p2_raw >= 1


def probabilities(kappa: float, T: float, delta: float, c1: float, mode: str = "detect") -> ProbabilityPair:
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    if c1 <= 0:
        raise ValueError("c1 must be positive")
    a = EXPONENT[mode]
    scale = c1 / delta ** a
    p1 = scale * kappa / math.sqrt(T)
    p2 = scale / kappa
    return ProbabilityPair(min(p1, 1.0), min(p2, 1.0), p1, p2)


def log2_floor1(T: float) -> float:
    return max(math.log2(T), 1.0)


def default_detect_delta(T: float) -> float:
    return 1.0 / (2098 * log2_floor1(T))


def default_count_delta(T: float, epsilon: float) -> float:
    return epsilon / (2098 * log2_floor1(T) ** 3)


# desk profile: a fixed moderate delta so that small graphs are not saturated
# by the asymptotic constants
DESK_DELTA = {"detect": 0.25, "count": 0.25}
# detection picks c1 per instance so that nothing saturates; see unsaturated_c1
DESK_C = {"detect": None, "count": 0.0625}


def resolve_delta(T: float, mode: str, profile: str = "desk", epsilon: float = 0.5,
                  override: float | None = None) -> float:
    if override is not None:
        return override
    if profile == "desk":
        return DESK_DELTA[mode]
    if profile == "paper":
        return default_detect_delta(T) if mode == "detect" else default_count_delta(T, epsilon)
    raise ValueError(f"unknown profile {profile!r}")


def resolve_c1(T: float, delta: float, mode: str, profile: str = "desk", override: float | None = None) -> float:
    if override is not None:
        return override
    if profile == "paper":
        return 1.0
    c = DESK_C[mode]
    return unsaturated_c1(T, delta, mode) if c is None else c


def unsaturated_c1(T: float, delta: float, mode: str = "detect", target: float = 0.95) -> float:
    """The c1 that puts the largest probability over the grid at ``target``."""
    grid = index_set(T)
    a = delta ** EXPONENT[mode]
    top = max(grid.values[-1] / math.sqrt(T), 1.0 / grid.values[0]) / a
    return target / top


@dataclass(frozen=True)
class Params:
    """Lower bound T, delta, c1 and mode; everything else derives from these."""

    T: float
    delta: float
    c1: float = 1.0
    mode: str = "detect"

    def __post_init__(self):
        if self.T < 1:
            raise ValueError("T must be >= 1")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        if self.mode not in EXPONENT:
            raise ValueError(f"unknown mode {self.mode!r}")

    @cached_property
    def grid(self) -> IndexSet:
        return index_set(self.T)

    @property
    def sqrtT(self) -> float:
        return math.sqrt(self.T)

    @property
    def base(self) -> float:
        return self.grid.base

    def kappa(self, k: int) -> float:
        return self.grid.kappa(k)

    @property
    def kappa_indices(self) -> range:
        return range(len(self.grid))

    def p1_raw(self, k: int) -> float:
        return self.c1 * self.kappa(k) / (self.delta ** EXPONENT[self.mode] * self.sqrtT)

    def p2_raw(self, k: int) -> float:
        return self.c1 / (self.delta ** EXPONENT[self.mode] * self.kappa(k))

    def p1(self, k: int) -> float:
        return min(1.0, self.p1_raw(k))

    def p2(self, k: int) -> float:
        return min(1.0, self.p2_raw(k))

    def tier_raw(self, tier: int, k: int) -> float:
        return self.p1_raw(k) if tier == 1 else self.p2_raw(k)

    @property
    def pair_probability(self) -> float:
        """p1 * p2 before clamping; the same for every kappa."""
        return self.c1 ** 2 / (self.delta ** (2 * EXPONENT[self.mode]) * self.sqrtT)

    @property
    def saturated(self) -> bool:
        return any(self.p1_raw(k) >= 1 or self.p2_raw(k) >= 1 for k in self.kappa_indices)

    @property
    def llm_depth(self) -> int:
        """Largest j with 2^-j >= delta^2: how far below kappa the minimality sweep reaches."""
        return int(math.floor(math.log2(1.0 / self.delta ** 2) + 1e-9))


# ---------------------------------------------------------------------------
# sample families


@dataclass(frozen=True)
class SampleFamily:
    """Implicit random node sets, one per (label, kappa index).

    Membership of v in (label, k) is the pure function
    hash(sub_seed(label, k) xor v) / 2^64 < p(label, k). Core labels use the
    tier probability; other labels multiply it by ``multipliers[label]``.
    ``edge_rates`` gives the Qedge sampling rate per class key.
    """

    master_seed: int
    params: Params
    multipliers: dict = field(default_factory=dict)
    edge_rates: dict = field(default_factory=dict)

    def sub_seed(self, label: Label, k: int) -> int:
        return mix(self.master_seed, label.id, k + 4096)

    def probability(self, label: Label, k: int) -> float:
        raw = self.raw_probability(label, k)
        return min(1.0, max(0.0, raw))

    def raw_probability(self, label: Label, k: int) -> float:
        base = self.params.tier_raw(label.tier, k)
        return base * self.multipliers.get(label, 1.0)

    def saturated(self, label: Label, k: int) -> bool:
        return self.raw_probability(label, k) >= 1.0

    def member(self, label: Label, k: int, v: int) -> bool:
        return unit_hash(self.sub_seed(label, k), v) < self.probability(label, k)

    def edge_member(self, key: int, u: int, v: int) -> bool:
        """Qedge membership of edge (u, v) under the integer rate key ``key``."""
        a, b = (int(u), int(v)) if u < v else (int(v), int(u))
        seed = mix(self.master_seed, Label.Qedge.id, key)
        return unit_hash(seed, splitmix64((a << 32) ^ b)) < min(1.0, self.edge_rates[key])

    def mask_array(self, nodes, labels=NODE_LABELS, ks=None) -> np.ndarray:
        """Label bitmasks, shape (len(nodes), len(ks)); ks defaults to every grid index."""
        arr = np.asarray(list(nodes), dtype=np.uint64)
        ks = list(self.params.kappa_indices) if ks is None else list(ks)
        masks = np.zeros((len(arr), len(ks)), dtype=np.int64)
        if len(arr) == 0:
            return masks
        with np.errstate(over="ignore"):
            for label in labels:
                for col, k in enumerate(ks):
                    p = self.probability(label, k)
                    if p <= 0:
                        continue
                    if p >= 1:
                        masks[:, col] |= label.bit
                        continue
                    h = splitmix64_array(arr ^ np.uint64(self.sub_seed(label, k)))
                    u = (h >> np.uint64(11)).astype(np.float64) * _INV53
                    masks[u < p, col] |= label.bit
        return masks

    def mask_table(self, nodes, labels=NODE_LABELS) -> dict[int, tuple[int, ...]]:
        """Bitmask of label memberships for every node and kappa index, vectorized."""
        nodes = list(nodes)
        masks = self.mask_array(nodes, labels)
        return {v: tuple(int(x) for x in row) for v, row in zip(nodes, masks)}


def member(fam: SampleFamily, label: Label, k: int, v: int) -> bool:
    return fam.member(label, k, v)


# ---------------------------------------------------------------------------
# shifts


def grid_ratio(L: float) -> float:
    return 1.0 + 1.0 / (200.0 * L)


def grid_size(L: float) -> int:
    """Number of exponents i >= 0 with (1 + 1/(200L))^i < 2."""
    r = grid_ratio(L)
    count = math.ceil(math.log(2.0) / math.log(r))
    while count > 1 and r ** (count - 1) >= 2.0:
        count -= 1
    while r ** count < 2.0:
        count += 1
    return count


def shift_grid(L: float) -> list[float]:
    r = grid_ratio(L)
    return [r ** i for i in range(grid_size(L))]


@dataclass(frozen=True)
class Shifts:
    """Threshold shifts: s1 for wedges (grid L2), s2 for edges (L1), s3 for nodes (L)."""

    s1: float = 1.0
    s2: float = 1.0
    s3: float = 1.0
    L: float = 1.0
    L1: float = 1.0
    L2: float = 1.0
    i1: int = 0
    i2: int = 0
    i3: int = 0

    @classmethod
    def from_indices(cls, i1: int, i2: int, i3: int, L: float, L1: float, L2: float) -> "Shifts":
        return cls(grid_ratio(L2) ** i1, grid_ratio(L1) ** i2, grid_ratio(L) ** i3, L, L1, L2, i1, i2, i3)

    def with_index(self, which: str, i: int) -> "Shifts":
        idx = {"s1": self.i1, "s2": self.i2, "s3": self.i3}
        idx[which] = i
        return Shifts.from_indices(idx["s1"], idx["s2"], idx["s3"], self.L, self.L1, self.L2)


def draw_shifts(rng, L: float, L1: float, L2: float) -> Shifts:
    """Uniform draws from the three geometric grids."""
    if min(L, L1, L2) < 1:
        raise ValueError("grid parameters must be >= 1")
    i1 = int(rng.integers(grid_size(L2)))
    i2 = int(rng.integers(grid_size(L1)))
    i3 = int(rng.integers(grid_size(L)))
    return Shifts.from_indices(i1, i2, i3, L, L1, L2)
