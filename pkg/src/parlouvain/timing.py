"""Per-level, per-process timing report and its key=value serialization."""
from __future__ import annotations

from dataclasses import dataclass, field

PROCESSES = ("neighbour", "init", "onelevel", "renumber", "induce")
SCHEMA = "parlouvain-timing/1"


@dataclass
class TimingReport:
    """Wall-clock seconds per process for each recorded dendrogram level.

    ``wall`` covers the whole run, including the final attempted level that
    did not improve modularity enough to be kept.
    """

    engine: str
    workers: int
    n: int
    m: int
    max_degree: int
    avg_degree: float
    levels: list[dict[str, float]] = field(default_factory=list)
    wall: float = 0.0
    modularity: float = float("nan")

    def total(self, process: str) -> float:
        return sum(level[process] for level in self.levels)


def _num(x: float) -> str:
    return repr(float(x))


def emit_timing(report: TimingReport) -> str:
    """Render ``report`` as ``key=value`` lines.

    Keys, in order: ``schema``, ``engine``, ``workers``, ``graph.n``,
    ``graph.m``, ``graph.max_degree``, ``graph.avg_degree``, ``levels``, then
    ``level.<t>.<process>`` for every level and process, ``total.<process>``,
    ``total.wall`` and ``modularity``. Durations are seconds.
    """
    lines = [
        f"schema={SCHEMA}",
        f"engine={report.engine}",
        f"workers={report.workers}",
        f"graph.n={report.n}",
        f"graph.m={report.m}",
        f"graph.max_degree={report.max_degree}",
        f"graph.avg_degree={_num(report.avg_degree)}",
        f"levels={len(report.levels)}",
    ]
    for t, level in enumerate(report.levels):
        lines.extend(f"level.{t}.{p}={_num(level[p])}" for p in PROCESSES)
    lines.extend(f"total.{p}={_num(report.total(p))}" for p in PROCESSES)
    lines.append(f"total.wall={_num(report.wall)}")
    lines.append(f"modularity={_num(report.modularity)}")
    return "\n".join(lines) + "\n"


def parse_timing(text: str) -> dict[str, str]:
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line)
