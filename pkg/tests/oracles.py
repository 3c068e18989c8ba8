"""Independent reference computations used by the tests.

Nothing here calls into parlouvain's algebra; the oracles work on plain
edge lists so they can check the library rather than echo it.
"""
from __future__ import annotations


import networkx as nx
import numpy as np


def set_partitions(n):
    """All partitions of range(n) as restricted-growth label lists."""
    labels = [0] * n

    def rec(i, top):
        if i == n:
            yield list(labels)
            return
        for v in range(top + 1):
            labels[i] = v
            yield from rec(i + 1, top + 1 if v == top else top)

    if n == 0:
        yield []
    else:
        yield from rec(1, 1)


def direct_modularity(edges, labels):
    """Sum intra-community edge weight and community degrees edge by edge.

    A loop adds its weight twice to its vertex's degree and once to the
    intra-community weight.
    """
    total = sum(w for _, _, w in edges)
    inside = 0.0
    degree = {}
    for u, v, w in edges:
        degree[labels[u]] = degree.get(labels[u], 0.0) + w
        degree[labels[v]] = degree.get(labels[v], 0.0) + w
        if labels[u] == labels[v]:
            inside += w
    return inside / total - sum((d / (2 * total)) ** 2 for d in degree.values())


def optimum_modularity(n, edges):
    return max(direct_modularity(edges, p) for p in set_partitions(n))


def small_connected_graphs(max_n=6):
    """Every connected graph on 2..max_n vertices, up to isomorphism."""
    return [
        g for g in nx.graph_atlas_g()
        if 2 <= g.number_of_nodes() <= max_n and nx.is_connected(g)
    ]


def random_connected_graphs(n, count, seed):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        g = nx.gnp_random_graph(n, float(rng.uniform(0.25, 0.8)), seed=int(rng.integers(2**31)))
        if nx.is_connected(g):
            out.append(g)
    return out


def nx_edges(g, weight=1.0):
    return [(int(u), int(v), weight) for u, v in g.edges()]


def planted_graph(n, seed, groups=None, p_in=0.3, p_out=0.01, weighted=True, loops=0):
    """Random graph with planted groups, optional random weights and loops, as edge triples."""
    rng = np.random.default_rng(seed)
    groups = groups or max(2, n // 25)
    member = rng.integers(groups, size=n)
    iu, ju = np.triu_indices(n, k=1)
    p = np.where(member[iu] == member[ju], p_in, p_out)
    keep = rng.random(iu.size) < p
    src, dst = iu[keep], ju[keep]
    w = rng.uniform(0.5, 3.0, size=src.size) if weighted else np.ones(src.size)
    edges = list(zip(src.tolist(), dst.tolist(), w.tolist()))
    for v in rng.choice(n, size=min(loops, n), replace=False).tolist():
        edges.append((v, v, float(rng.uniform(0.5, 2.0))))
    return edges


def brute_move_gain(n, edges, labels, i, target):
    """Q change from moving ``i`` to ``target``, by recomputing Q twice."""
    moved = list(labels)
    moved[i] = target
    return direct_modularity(edges, moved) - direct_modularity(edges, labels)
