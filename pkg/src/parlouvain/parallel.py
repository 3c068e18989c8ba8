"""Parallel engine: a GIL-free scoring kernel mapped over vertex ranges by a thread pool.

Each worker reads the shared snapshot and writes only its own slice of the
output, so the result does not depend on the number of workers.
"""
from __future__ import annotations

from concurrent.futures import Executor

import numba
import numpy as np

from .graph_core import AdjacencyIndex
from .modularity import CommunityState, aggregate


@numba.njit(nogil=True, cache=True)
def _score_range(
    lo, hi, merge, offset, count, targets, weights, degree,
    labels, com_degree, com_size, total_weight, out, margin, pos, cand_c, cand_w,
):  # fmt: skip
    two_w = 2.0 * total_weight
    denom = two_w * two_w
    for i in range(lo, hi):
        own = labels[i]
        out[i] = own
        margin[i] = 0.0
        if merge and com_size[own] != 1:
            continue
        # aggregate edge weight per neighbouring community, loops skipped
        k = 0
        start = offset[i]
        for e in range(start, start + count[i]):
            j = targets[e]
            if j == i:
                continue
            c = labels[j]
            p = pos[c]
            if p < 0:
                p = k
                pos[c] = k
                cand_c[k] = c
                cand_w[k] = 0.0
                k += 1
            cand_w[p] += weights[e]
        own_w = 0.0
        if pos[own] >= 0:
            own_w = cand_w[pos[own]]
        for p in range(k):
            pos[cand_c[p]] = -1

        d_i = degree[i]
        deg_rest = com_degree[own] - d_i
        own_gain = own_w / total_weight + (2.0 * d_i * deg_rest - 2.0 * d_i * deg_rest) / denom
        if merge:
            others = 0
            best = own
            best_gain = own_gain
            for p in range(k):
                c = cand_c[p]
                if c != own:
                    others += 1
                    best = c
                    best_gain = cand_w[p] / total_weight + (
                        2.0 * d_i * deg_rest - 2.0 * d_i * com_degree[c]
                    ) / denom
            if others != 1:
                continue
        else:
            best = own
            best_gain = own_gain
            for p in range(k):
                c = cand_c[p]
                if c == own:
                    continue
                g = cand_w[p] / total_weight + (
                    2.0 * d_i * deg_rest - 2.0 * d_i * com_degree[c]
                ) / denom
                if g > best_gain or (g == best_gain and c < best):
                    best = c
                    best_gain = g
        if best == own or not best_gain - own_gain > 0:
            continue
        if com_size[own] == 1 and com_size[best] == 1 and best > own:
            continue
        out[i] = best
        margin[i] = best_gain - own_gain


def _chunks(idx: AdjacencyIndex, parts: int) -> list[tuple[int, int]]:
    """Split ``0..n`` into contiguous ranges of roughly equal adjacency work."""
    n = idx.n
    parts = max(1, min(parts, n))
    work = idx.offset + idx.count + np.arange(n)
    cuts = np.searchsorted(work, np.linspace(0, work[-1], parts + 1)[1:-1], side="right")
    bounds = np.unique(np.concatenate([[0], cuts, [n]]))
    return list(zip(bounds[:-1].tolist(), bounds[1:].tolist()))


def _run(
    idx: AdjacencyIndex,
    s: CommunityState,
    merge: bool,
    workers: int,
    executor: Executor | None,
) -> np.ndarray:
    n = idx.n
    out = np.empty(n, dtype=np.int64)
    margin = np.empty(n, dtype=np.float64)
    ranges = _chunks(idx, workers if executor is not None else 1)

    def task(bounds):
        lo, hi = bounds
        pos = np.full(n, -1, dtype=np.int64)
        cand_c = np.empty(n, dtype=np.int64)
        cand_w = np.empty(n, dtype=np.float64)
        _score_range(
            lo, hi, merge, idx.offset, idx.count, idx.targets, idx.weights, idx.degree,
            s.labels, s.com_degree, s.com_size, float(s.total_weight), out, margin, pos, cand_c, cand_w,
        )  # fmt: skip

    if executor is None or len(ranges) == 1:
        for r in ranges:
            task(r)
    else:
        # list() re-raises worker exceptions
        list(executor.map(task, ranges))
    return out, margin


def sweep(idx, snapshot, workers=1, executor=None):
    """Proposed labels and their gain over staying, for every vertex."""
    return _run(idx, snapshot, False, workers, executor)


def merge_sweep(idx, snapshot, workers=1, executor=None):
    return _run(idx, snapshot, True, workers, executor)


def commit(idx: AdjacencyIndex, labels: np.ndarray) -> CommunityState:
    return aggregate(idx, labels)
