"""Slow, obviously-correct references used by the tests.

Nothing here imports the package's counting code: cycles are found by
trying every 4-subset of nodes in its three cyclic orders.
"""

from itertools import combinations

import numpy as np


def adjacency(edges):
    adj = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def brute_cycles(edges):
    """Every four-cycle as a frozenset of its four edges."""
    adj = adjacency(edges)
    nodes = sorted(adj)
    out = set()
    for a, b, c, d in combinations(nodes, 4):
        for order in ((a, b, c, d), (a, b, d, c), (a, c, b, d)):
            ring = order + (order[0],)
            if all(ring[i + 1] in adj[ring[i]] for i in range(4)):
                out.add(frozenset(frozenset(ring[i:i + 2]) for i in range(4)))
    return out


def brute_count(edges):
    return len(brute_cycles(edges))


def cycle_nodes(cyc):
    return set().union(*cyc)


def brute_node_t(edges, v):
    return sum(1 for c in brute_cycles(edges) if v in cycle_nodes(c))


def brute_edge_t(edges, u, v):
    e = frozenset((u, v))
    return sum(1 for c in brute_cycles(edges) if e in c)


def brute_wedge_t(edges, a, center, b):
    e1, e2 = frozenset((a, center)), frozenset((center, b))
    return sum(1 for c in brute_cycles(edges) if e1 in c and e2 in c)


def brute_common(edges, u, v):
    adj = adjacency(edges)
    return len(adj.get(u, set()) & adj.get(v, set()))


def random_edges(n, p, seed):
    rng = np.random.default_rng(seed)
    return [(i, j) for i, j in combinations(range(n), 2) if rng.random() < p]
