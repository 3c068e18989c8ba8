"""In-memory graph and its sorted directed adjacency (the neighbour arrays)."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GraphValidationError


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected weighted graph with loops and no parallel edges.

    Edges are stored canonically: ``src <= dst``, sorted by ``(src, dst)``,
    each unordered pair at most once. ``original_ids[k]`` is the external id
    of dense vertex ``k`` (``None`` means ids are already dense).
    """

    n: int
    src: np.ndarray
    dst: np.ndarray
    weight: np.ndarray
    original_ids: np.ndarray | None = field(default=None)

    @classmethod
    def from_edges(cls, n, edges, original_ids=None) -> "Graph":
        """Build from ``(u, v[, w])`` tuples, merging duplicate pairs by weight sum."""
        edges = list(edges)
        src = np.fromiter((e[0] for e in edges), dtype=np.int64, count=len(edges))
        dst = np.fromiter((e[1] for e in edges), dtype=np.int64, count=len(edges))
        w = np.fromiter(
            (float(e[2]) if len(e) > 2 else 1.0 for e in edges),
            dtype=np.float64,
            count=len(edges),
        )
        return cls.from_arrays(n, src, dst, w, original_ids)

    @classmethod
    def from_arrays(cls, n, src, dst, weight, original_ids=None) -> "Graph":
        n = int(n)
        if n < 1:
            raise GraphValidationError("graph needs at least one vertex")
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        weight = np.asarray(weight, dtype=np.float64)
        if not (src.shape == dst.shape == weight.shape) or src.ndim != 1:
            raise GraphValidationError("edge arrays must be 1-d and equally long")
        if src.size:
            if min(src.min(), dst.min()) < 0 or max(src.max(), dst.max()) >= n:
                raise GraphValidationError(f"vertex id out of range [0, {n})")
            if not np.all(np.isfinite(weight)) or np.any(weight <= 0):
                raise GraphValidationError("edge weights must be finite and > 0")
        lo = np.minimum(src, dst)
        hi = np.maximum(src, dst)
        order = np.lexsort((hi, lo))
        lo, hi, weight = lo[order], hi[order], weight[order]
        if lo.size:
            start = np.ones(lo.size, dtype=bool)
            start[1:] = (lo[1:] != lo[:-1]) | (hi[1:] != hi[:-1])
            if not start.all():
                idx = np.flatnonzero(start)
                weight = np.add.reduceat(weight, idx)
                lo, hi = lo[idx], hi[idx]
        if original_ids is not None:
            original_ids = np.asarray(original_ids, dtype=np.int64)
            if original_ids.shape != (n,):
                raise GraphValidationError("original_ids must have one entry per vertex")
        return cls(n, lo, hi, weight, original_ids)

    @property
    def m(self) -> int:
        return int(self.src.size)

    @property
    def edges(self) -> list[tuple[int, int, float]]:
        return list(zip(self.src.tolist(), self.dst.tolist(), self.weight.tolist()))

    @property
    def total_weight(self) -> float:
        return float(self.weight.sum())

    def external_ids(self) -> np.ndarray:
        if self.original_ids is None:
            return np.arange(self.n, dtype=np.int64)
        return self.original_ids


@dataclass(frozen=True, eq=False)
class AdjacencyIndex:
    """Directed expansion of a :class:`Graph`, sorted by ``(source, target)``.

    Non-loop edges appear in both orientations, loops once. The neighbours of
    ``i`` live in ``[offset[i], offset[i] + count[i])``. ``degree`` counts a
    loop twice so that ``degree.sum() == 2 * total_weight``.
    """

    n: int
    sources: np.ndarray
    targets: np.ndarray
    weights: np.ndarray
    offset: np.ndarray
    count: np.ndarray
    degree: np.ndarray
    loop_weight: np.ndarray
    total_weight: float

    def neighbors(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        lo = self.offset[i]
        hi = lo + self.count[i]
        return self.targets[lo:hi], self.weights[lo:hi]


def build_adjacency(g: Graph) -> AdjacencyIndex:
    """Mirror, sort and prefix-sum the edges of ``g`` into an :class:`AdjacencyIndex`."""
    nonloop = g.src != g.dst
    sources = np.concatenate([g.src, g.dst[nonloop]])
    targets = np.concatenate([g.dst, g.src[nonloop]])
    weights = np.concatenate([g.weight, g.weight[nonloop]])
    order = np.lexsort((targets, sources))
    sources, targets, weights = sources[order], targets[order], weights[order]

    count = np.bincount(sources, minlength=g.n).astype(np.int64)
    offset = np.zeros(g.n, dtype=np.int64)
    np.cumsum(count[:-1], out=offset[1:])

    loop_weight = np.zeros(g.n, dtype=np.float64)
    loops = ~nonloop
    loop_weight[g.src[loops]] = g.weight[loops]
    degree = np.bincount(sources, weights=weights, minlength=g.n) + loop_weight

    for arr in (sources, targets, weights, offset, count, degree, loop_weight):
        arr.setflags(write=False)
    return AdjacencyIndex(
        n=g.n,
        sources=sources,
        targets=targets,
        weights=weights,
        offset=offset,
        count=count,
        degree=degree,
        loop_weight=loop_weight,
        total_weight=g.total_weight,
    )


def weighted_degree(idx: AdjacencyIndex, i: int) -> float:
    if not 0 <= i < idx.n:
        raise IndexError(f"vertex {i} out of range [0, {idx.n})")
    return float(idx.degree[i])
