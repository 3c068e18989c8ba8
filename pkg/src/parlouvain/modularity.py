"""Community bookkeeping and the modularity / modularity-gain algebra."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import UndefinedModularityError
from .graph_core import AdjacencyIndex


@dataclass(eq=False)
class CommunityState:
    """Per-vertex labels plus per-label aggregates.

    ``com_degree[c]`` is the summed weighted degree of the members of ``c``;
    ``com_internal[c]`` the weight of edges with both ends in ``c`` (a loop
    counts once). Labels index the arrays directly, so they stay in ``0..N-1``.
    """

    labels: np.ndarray
    com_degree: np.ndarray
    com_internal: np.ndarray
    com_size: np.ndarray
    total_weight: float

    def copy(self) -> "CommunityState":
        return CommunityState(
            self.labels.copy(),
            self.com_degree.copy(),
            self.com_internal.copy(),
            self.com_size.copy(),
            self.total_weight,
        )

    def nonempty_labels(self) -> np.ndarray:
        return np.flatnonzero(self.com_size)


class GainCandidate(NamedTuple):
    community: int
    edge_weight_to: float


def init_status(idx: AdjacencyIndex) -> CommunityState:
    """Every vertex in its own community, labelled by its id."""
    return CommunityState(
        labels=np.arange(idx.n, dtype=np.int64),
        com_degree=np.array(idx.degree, dtype=np.float64),
        com_internal=np.array(idx.loop_weight, dtype=np.float64),
        com_size=np.ones(idx.n, dtype=np.int64),
        total_weight=idx.total_weight,
    )


def aggregate(idx: AdjacencyIndex, labels: np.ndarray) -> CommunityState:
    """Recompute all aggregates for ``labels`` from scratch.

    Sums run in vertex order (degrees) and directed-entry order (internal
    weight), so the result is bit-reproducible.
    """
    labels = np.asarray(labels, dtype=np.int64)
    n = idx.n
    # bincount yields int64 for empty weights; force float
    com_degree = np.bincount(labels, weights=idx.degree, minlength=n).astype(np.float64)
    com_size = np.bincount(labels, minlength=n).astype(np.int64)
    ls = labels[idx.sources]
    inside = (idx.sources <= idx.targets) & (ls == labels[idx.targets])
    com_internal = np.bincount(ls[inside], weights=idx.weights[inside], minlength=n).astype(
        np.float64
    )
    return CommunityState(labels.copy(), com_degree, com_internal, com_size, idx.total_weight)


def neighbor_community_weights(
    idx: AdjacencyIndex, i: int, s: CommunityState
) -> list[GainCandidate]:
    """Edge weight from ``i`` into each adjacent community, loops excluded.

    ``i``'s own community is always present (possibly with weight 0). The
    result is ordered by community label.
    """
    if not 0 <= i < idx.n:
        raise IndexError(f"vertex {i} out of range [0, {idx.n})")
    own = int(s.labels[i])
    acc: dict[int, float] = {}
    targets, weights = idx.neighbors(i)
    for j, w in zip(targets.tolist(), weights.tolist()):
        if j == i:
            continue
        c = int(s.labels[j])
        acc[c] = acc.get(c, 0.0) + w
    acc.setdefault(own, 0.0)
    return [GainCandidate(c, acc[c]) for c in sorted(acc)]


def modularity(s: CommunityState) -> float:
    """Q = sum over communities of internal/W - (degree / 2W)^2."""
    w = s.total_weight
    if w <= 0:
        raise UndefinedModularityError("modularity is undefined for total edge weight 0")
    live = s.com_size > 0
    deg = s.com_degree[live] / (2.0 * w)
    return float(np.sum(s.com_internal[live] / w - deg * deg))


def gain(idx: AdjacencyIndex, i: int, cand: GainCandidate, s: CommunityState) -> float:
    """Score of placing ``i`` into ``cand.community`` once ``i`` is lifted out of its own.

    Differences between two candidates' scores equal the difference in Q of
    the two resulting partitions. For ``i``'s own community the degree term
    vanishes and the score is the stay baseline ``e / W``.
    """
    w = s.total_weight
    if w <= 0:
        raise UndefinedModularityError("modularity gain is undefined for total edge weight 0")
    d_i = float(idx.degree[i])
    own = int(s.labels[i])
    deg_rest = float(s.com_degree[own]) - d_i
    deg_target = deg_rest if cand.community == own else float(s.com_degree[cand.community])
    two_w = 2.0 * w
    return cand.edge_weight_to / w + (2.0 * d_i * deg_rest - 2.0 * d_i * deg_target) / (
        two_w * two_w
    )


def move(idx: AdjacencyIndex, s: CommunityState, i: int, target: int) -> CommunityState:
    """Return a copy of ``s`` with vertex ``i`` moved to community ``target``.

    Updates only the two affected communities via remove/insert deltas.
    """
    out = s.copy()
    own = int(s.labels[i])
    if own == target:
        return out
    e = {c.community: c.edge_weight_to for c in neighbor_community_weights(idx, i, s)}
    d_i = float(idx.degree[i])
    loop = float(idx.loop_weight[i])
    out.com_degree[own] -= d_i
    out.com_internal[own] -= e.get(own, 0.0) + loop
    out.com_size[own] -= 1
    out.com_degree[target] += d_i
    out.com_internal[target] += e.get(target, 0.0) + loop
    out.com_size[target] += 1
    out.labels[i] = target
    return out
