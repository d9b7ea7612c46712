"""Multi-pass streaming detection and counting of four-cycles."""

from .graph import Graph, GraphInputError, Wedge, exact_four_cycle_count, enumerate_four_cycles, true_heaviness
from .stream import EdgeStream, SpaceMeter
from .sampling import Label, Params, SampleFamily, Shifts, index_set

__version__ = "0.1.0"

__all__ = [
    "EdgeStream", "Graph", "GraphInputError", "Label", "Params", "SampleFamily", "Shifts", "SpaceMeter", "Wedge",
    "enumerate_four_cycles", "exact_four_cycle_count", "index_set", "true_heaviness",
]
