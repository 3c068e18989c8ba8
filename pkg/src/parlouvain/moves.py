"""Per-vertex move rules, evaluated against a frozen snapshot."""
from __future__ import annotations

import math

from .graph_core import AdjacencyIndex
from .modularity import CommunityState, gain, neighbor_community_weights


def score_move(idx: AdjacencyIndex, i: int, snapshot: CommunityState) -> tuple[int, float]:
    """``(label, margin)``: where ``i`` should go and by how much Q would rise."""
    own = int(snapshot.labels[i])
    best, best_gain, own_gain = own, -math.inf, 0.0
    for cand in neighbor_community_weights(idx, i, snapshot):
        g = gain(idx, i, cand, snapshot)
        if cand.community == own:
            own_gain = g
        if g > best_gain:
            best, best_gain = cand.community, g
    if best == own or not best_gain - own_gain > 0:
        return own, 0.0
    size = snapshot.com_size
    if size[own] == 1 and size[best] == 1 and best > own:
        return own, 0.0
    return best, best_gain - own_gain


def best_move(idx: AdjacencyIndex, i: int, snapshot: CommunityState) -> int:
    """Label vertex ``i`` should carry next iteration.

    Highest-scoring adjacent community, lowest label on ties. The move must
    beat staying put by a strictly positive margin, and a singlet may only
    join another singlet with a lower label.
    """
    return score_move(idx, i, snapshot)[0]


def score_merge(idx: AdjacencyIndex, i: int, snapshot: CommunityState) -> tuple[int, float]:
    own = int(snapshot.labels[i])
    size = snapshot.com_size
    if size[own] != 1:
        return own, 0.0
    cands = neighbor_community_weights(idx, i, snapshot)
    others = [c for c in cands if c.community != own]
    if len(others) != 1:
        return own, 0.0
    target = others[0]
    stay = next(c for c in cands if c.community == own)
    margin = gain(idx, i, target, snapshot) - gain(idx, i, stay, snapshot)
    if not margin > 0:
        return own, 0.0
    if size[target.community] == 1 and target.community > own:
        return own, 0.0
    return target.community, margin


def merge_target(idx: AdjacencyIndex, i: int, snapshot: CommunityState) -> int:
    """Destination for a singlet whose neighbours all share one community."""
    return score_merge(idx, i, snapshot)[0]
