"""Multi-level Louvain driver with snapshot-batch (lock-free) iterations."""
from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from contextlib import nullcontext
from dataclasses import dataclass, field

import numpy as np

from . import parallel, reference
from .errors import UndefinedModularityError
from .graph_core import AdjacencyIndex, Graph, build_adjacency
from .modularity import CommunityState, init_status, modularity
from .moves import best_move  # noqa: F401  re-exported
from .timing import TimingReport

log = logging.getLogger(__name__)

ENGINES = ("parallel", "sequential")


@dataclass(frozen=True)
class LouvainConfig:
    theta: float = 1e-6
    big_theta: float = 1e-6
    max_inner_iterations: int = 100
    workers: int = 1
    engine: str = "parallel"

    def __post_init__(self):
        if not self.theta > 0 or not self.big_theta > 0:
            raise ValueError("thresholds must be > 0")
        if self.max_inner_iterations < 1:
            raise ValueError("max_inner_iterations must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.engine not in ENGINES:
            raise ValueError(f"engine must be one of {ENGINES}, got {self.engine!r}")


@dataclass
class Dendrogram:
    """``levels[t]`` maps level-t vertices to dense level-t community labels."""

    levels: list[np.ndarray] = field(default_factory=list)
    modularity_per_level: list[float] = field(default_factory=list)


class RunObserver:
    """Hooks called during a run; subclass and override what you need."""

    def iteration(self, level: int, iteration: int, before: CommunityState,
                  after: CommunityState, q: float) -> None:
        pass

    def level_optimized(self, level: int, iterations: int, converged: bool, q: float) -> None:
        """After one-level optimization and the isolated-vertex merge, kept or not."""

    def induced(self, level: int, parent: Graph, child: Graph) -> None:
        pass


class _Engine:
    def __init__(self, cfg: LouvainConfig, executor=None):
        self.cfg = cfg
        self.executor = executor

    def sweep(self, idx, s, merge=False):
        if self.cfg.engine == "sequential":
            return (reference.merge_sweep if merge else reference.sweep)(idx, s)
        fn = parallel.merge_sweep if merge else parallel.sweep
        return fn(idx, s, self.cfg.workers, self.executor)

    def commit(self, idx, labels):
        if self.cfg.engine == "sequential":
            return reference.commit(idx, labels)
        return parallel.commit(idx, labels)


def _pool(cfg: LouvainConfig):
    if cfg.engine == "parallel" and cfg.workers > 1:
        return ThreadPoolExecutor(cfg.workers, thread_name_prefix="louvain")
    return nullcontext()


def _converged(q_curr: float, q_prev: float | None, theta: float) -> bool:
    if q_prev is None:
        return False
    if abs(q_prev) < 1e-12:
        return abs(q_curr - q_prev) < theta
    return abs((q_curr - q_prev) / q_prev) < theta


def _commit_improving(idx, s, q_before, targets, margins, engine):
    """Commit the proposed batch, or its best-gain prefix if the whole batch lowers Q.

    Moves are ranked by predicted gain (ties by vertex id) and the prefix is
    halved until Q rises; a single move is exact, so this always makes progress.
    """
    moved = np.flatnonzero(targets != s.labels)
    after = engine.commit(idx, targets)
    q = modularity(after)
    if q > q_before or moved.size == 1:
        return after, q
    ranked = moved[np.lexsort((moved, -margins[moved]))]
    keep = ranked.size
    while q <= q_before and keep > 1:
        keep = (keep + 1) // 2
        trial = s.labels.copy()
        chosen = ranked[:keep]
        trial[chosen] = targets[chosen]
        after = engine.commit(idx, trial)
        q = modularity(after)
    log.debug("batch of %d moves lowered Q; committed best %d", moved.size, keep)
    return after, q


def _one_level(idx, s, engine, observer=None, level=0):
    cfg = engine.cfg
    q_curr = modularity(s)
    q_prev = None
    improved = False
    converged = False
    iterations = 0
    for it in range(cfg.max_inner_iterations):
        targets, margins = engine.sweep(idx, s)
        if np.array_equal(targets, s.labels):
            converged = True
            break
        after, q_curr = _commit_improving(idx, s, q_curr, targets, margins, engine)
        improved = True
        iterations = it + 1
        if observer is not None:
            observer.iteration(level, it, s, after, q_curr)
        s = after
        if _converged(q_curr, q_prev, cfg.theta):
            converged = True
            break
        q_prev = q_curr
    return s, improved, iterations, converged


def one_level(idx: AdjacencyIndex, s: CommunityState, cfg: LouvainConfig | None = None,
              observer: RunObserver | None = None) -> tuple[CommunityState, bool]:
    """Iterate batched moves from ``s`` until the relative Q change drops below ``theta``.

    Every iteration scores all vertices against the previous iteration's
    state, then commits the accepted moves together (see
    :func:`_commit_improving` for what happens when a batch backfires).
    """
    cfg = cfg or LouvainConfig()
    if idx.total_weight <= 0:
        raise UndefinedModularityError("modularity is undefined for total edge weight 0")
    with _pool(cfg) as pool:
        s, improved, _, _ = _one_level(idx, s, _Engine(cfg, pool), observer)
    return s, improved


def _merge_isolated(idx, s, engine):
    targets, margins = engine.sweep(idx, s, merge=True)
    if np.array_equal(targets, s.labels):
        return s
    return _commit_improving(idx, s, modularity(s), targets, margins, engine)[0]


def merge_isolated(idx: AdjacencyIndex, s: CommunityState,
                   cfg: LouvainConfig | None = None) -> CommunityState:
    """Push singlets with a single neighbouring community into it, as one batch.

    A move is applied only when it raises modularity, and a singlet never
    joins another singlet with a higher label. Committed like a one-level batch.
    """
    cfg = cfg or LouvainConfig()
    with _pool(cfg) as pool:
        return _merge_isolated(idx, s, _Engine(cfg, pool))


def renumber(s: CommunityState | np.ndarray) -> tuple[np.ndarray, dict[int, int]]:
    """Compact labels to ``0..k-1``, preserving their order."""
    labels = s.labels if isinstance(s, CommunityState) else np.asarray(s)
    uniq, dense = np.unique(labels, return_inverse=True)
    return dense.astype(np.int64).reshape(labels.shape), {
        int(old): new for new, old in enumerate(uniq.tolist())
    }


def induce_graph(g: Graph, dense_assignment) -> Graph:
    """Collapse each community to one vertex; intra-community weight becomes a loop."""
    a = np.asarray(dense_assignment, dtype=np.int64)
    if a.shape != (g.n,):
        raise ValueError(f"assignment has {a.size} entries for {g.n} vertices")
    k = int(a.max()) + 1 if a.size else 0
    return Graph.from_arrays(k, a[g.src], a[g.dst], g.weight)


def final_partition(d: Dendrogram) -> np.ndarray:
    """Compose all levels into an original-vertex -> final-community map."""
    if not d.levels:
        raise ValueError("dendrogram is empty")
    labels = d.levels[0]
    for level in d.levels[1:]:
        labels = level[labels]
    return labels


def run(g: Graph, cfg: LouvainConfig | None = None,
        observer: RunObserver | None = None) -> tuple[Dendrogram, TimingReport]:
    """Full multi-level detection; stops when a level gains less than ``big_theta``."""
    cfg = cfg or LouvainConfig()
    clock = time.perf_counter
    wall = clock()
    dendrogram = Dendrogram()
    report = None
    graph = g
    with _pool(cfg) as pool:
        engine = _Engine(cfg, pool)
        while True:
            level = len(dendrogram.levels)
            times = {}
            t0 = clock()
            idx = build_adjacency(graph)
            times["neighbour"] = clock() - t0
            if idx.total_weight <= 0:
                raise UndefinedModularityError("modularity is undefined for total edge weight 0")
            if report is None:
                report = TimingReport(
                    engine=cfg.engine,
                    workers=cfg.workers,
                    n=g.n,
                    m=g.m,
                    max_degree=int(idx.count.max()),
                    avg_degree=float(idx.count.sum()) / g.n,
                )

            t0 = clock()
            state = init_status(idx)
            times["init"] = clock() - t0

            t0 = clock()
            state, _, iterations, converged = _one_level(idx, state, engine, observer, level)
            state = _merge_isolated(idx, state, engine)
            q = modularity(state)
            times["onelevel"] = clock() - t0

            t0 = clock()
            dense, _ = renumber(state)
            times["renumber"] = clock() - t0

            log.debug("level %d: %d iterations, %d communities, Q=%.12f",
                      level, iterations, int(dense.max()) + 1, q)
            if observer is not None:
                observer.level_optimized(level, iterations, converged, q)
            if dendrogram.levels and q - dendrogram.modularity_per_level[-1] < cfg.big_theta:
                break
            dendrogram.levels.append(dense)
            dendrogram.modularity_per_level.append(q)

            t0 = clock()
            child = induce_graph(graph, dense)
            times["induce"] = clock() - t0
            if observer is not None:
                observer.induced(level, graph, child)
            report.levels.append(times)
            graph = child

    report.wall = clock() - wall
    report.modularity = dendrogram.modularity_per_level[-1]
    return dendrogram, report
