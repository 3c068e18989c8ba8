"""Sequential reference engine: plain Python loops, same snapshot-batch semantics."""
from __future__ import annotations

import numpy as np

from .graph_core import AdjacencyIndex
from .modularity import CommunityState
from .moves import score_merge, score_move


def _collect(fn, idx, snapshot):
    pairs = [fn(idx, i, snapshot) for i in range(idx.n)]
    labels = np.array([p[0] for p in pairs], dtype=np.int64)
    margins = np.array([p[1] for p in pairs], dtype=np.float64)
    return labels, margins


def sweep(idx: AdjacencyIndex, snapshot: CommunityState):
    return _collect(score_move, idx, snapshot)


def merge_sweep(idx: AdjacencyIndex, snapshot: CommunityState):
    return _collect(score_merge, idx, snapshot)


def commit(idx: AdjacencyIndex, labels: np.ndarray) -> CommunityState:
    n = idx.n
    lab = [int(c) for c in labels]
    com_degree = [0.0] * n
    com_size = [0] * n
    com_internal = [0.0] * n
    for i, d in enumerate(idx.degree.tolist()):
        com_degree[lab[i]] += d
        com_size[lab[i]] += 1
    for u, v, w in zip(idx.sources.tolist(), idx.targets.tolist(), idx.weights.tolist()):
        if u <= v and lab[u] == lab[v]:
            com_internal[lab[u]] += w
    return CommunityState(
        np.array(lab, dtype=np.int64),
        np.array(com_degree),
        np.array(com_internal),
        np.array(com_size, dtype=np.int64),
        idx.total_weight,
    )
