"""Replayable multi-pass edge streams and space accounting."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .graph import Graph, normalize_edge, read_edge_list


class StreamError(RuntimeError):
    """A pass ended early or was opened out of order."""


@dataclass(frozen=True)
class EdgeStream:
    """An immutable edge sequence that can be read any number of times.

    With ``per_pass_reshuffle`` on, every pass sees its own permutation,
    fixed by (order_seed, pass_index). Otherwise every pass replays the
    stored order.
    """

    edges: tuple[tuple[int, int], ...]
    order_seed: int = 0
    per_pass_reshuffle: bool = False
    duplicates: int = 0

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], order_seed: int = 0,
                   per_pass_reshuffle: bool = False) -> "EdgeStream":
        seen: set[tuple[int, int]] = set()
        out = []
        dups = 0
        for u, v in edges:
            e = normalize_edge(u, v)
            if e in seen:
                dups += 1
                continue
            seen.add(e)
            out.append(e)
        return cls(tuple(out), order_seed, per_pass_reshuffle, dups)

    @classmethod
    def from_graph(cls, g: Graph, order_seed: int = 0, per_pass_reshuffle: bool = False,
                   shuffle_initial: bool = False) -> "EdgeStream":
        edges = g.sorted_edges()
        if shuffle_initial:
            rng = np.random.default_rng([order_seed, 0])
            edges = [edges[i] for i in rng.permutation(len(edges))]
        return cls(tuple(edges), order_seed, per_pass_reshuffle, 0)

    @classmethod
    def from_file(cls, path, order_seed: int = 0, per_pass_reshuffle: bool = False) -> "EdgeStream":
        return cls.from_edges(read_edge_list(path), order_seed, per_pass_reshuffle)

    def __len__(self) -> int:
        return len(self.edges)

    def with_order(self, order_seed: int, per_pass_reshuffle: bool = True) -> "EdgeStream":
        return EdgeStream(self.edges, order_seed, per_pass_reshuffle, self.duplicates)

    def pass_order(self, pass_index: int) -> list[int]:
        if pass_index < 1:
            raise StreamError(f"pass indices start at 1, got {pass_index}")
        if not self.per_pass_reshuffle:
            return list(range(len(self.edges)))
        rng = np.random.default_rng([self.order_seed, pass_index])
        return rng.permutation(len(self.edges)).tolist()

    def open_pass(self, pass_index: int) -> Iterator[tuple[int, int]]:
        """Yield every edge exactly once, in this pass's order."""
        order = self.pass_order(pass_index)
        edges = self.edges
        for i in order:
            yield edges[i]

    def to_graph(self) -> Graph:
        return Graph(self.edges)


def open_pass(stream: EdgeStream, pass_index: int) -> Iterator[tuple[int, int]]:
    return stream.open_pass(pass_index)


def ingest(path, order_seed: int = 0, per_pass_reshuffle: bool = False) -> EdgeStream:
    """Build a stream from an edge-list file, keeping file order."""
    return EdgeStream.from_file(path, order_seed, per_pass_reshuffle)


class CapStatus(enum.Enum):
    WITHIN = "within"
    ABORTED = "aborted"


@dataclass
class SpaceMeter:
    """Counts stored edges (current and peak) plus O(1)-size auxiliary units."""

    stored_edges: int = 0
    peak_edges: int = 0
    aux_units: int = 0
    by_store: dict = field(default_factory=dict)

    def record_store(self, delta: int, store: str | None = None) -> "SpaceMeter":
        new = self.stored_edges + delta
        if new < 0:
            raise ValueError(f"stored edge count would become negative ({new})")
        self.stored_edges = new
        if new > self.peak_edges:
            self.peak_edges = new
        if store is not None:
            self.by_store[store] = self.by_store.get(store, 0) + delta
        return self

    def record_aux(self, units: int) -> "SpaceMeter":
        self.aux_units += units
        return self

    def snapshot(self) -> dict:
        return {
            "stored_edges": self.stored_edges,
            "peak_edges": self.peak_edges,
            "aux_units": self.aux_units,
            "by_store": dict(self.by_store),
        }


def record_store(meter: SpaceMeter, delta: int) -> SpaceMeter:
    return meter.record_store(delta)


def enforce_space_cap(meter: SpaceMeter, cap: float) -> CapStatus:
    if cap <= 0:
        raise ValueError("space cap must be positive")
    return CapStatus.ABORTED if meter.peak_edges > cap else CapStatus.WITHIN


class SpaceCapExceeded(RuntimeError):
    """Raised inside a run the moment its meter passes the configured cap."""

    def __init__(self, peak: int, cap: float):
        super().__init__(f"peak {peak} exceeded cap {cap}")
        self.peak = peak
        self.cap = cap


class EdgeStore:
    """A metered set of edges with adjacency, used by every algorithm here."""

    def __init__(self, meter: SpaceMeter, name: str, cap: float | None = None):
        self.meter = meter
        self.name = name
        self.cap = cap
        self.edges: set[tuple[int, int]] = set()
        self.adj: dict[int, set[int]] = {}

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, e) -> bool:
        return e in self.edges

    def add(self, u: int, v: int) -> bool:
        e = (u, v) if u < v else (v, u)
        if e in self.edges:
            return False
        self.edges.add(e)
        self.adj.setdefault(u, set()).add(v)
        self.adj.setdefault(v, set()).add(u)
        self.meter.record_store(1, self.name)
        if self.cap is not None and self.meter.peak_edges > self.cap:
            raise SpaceCapExceeded(self.meter.peak_edges, self.cap)
        return True

    def has(self, u: int, v: int) -> bool:
        return v in self.adj.get(u, ())

    def neighbors(self, v: int):
        return self.adj.get(v, ())

    def as_graph(self) -> Graph:
        return Graph(self.edges)
