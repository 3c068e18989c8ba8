import numpy as np
import pytest

from parlouvain import RunObserver, modularity


class InvariantRecorder(RunObserver):
    """Collects per-iteration and per-level invariant violations during runs."""

    def __init__(self):
        self.label_violations = []
        self.monotonic_violations = []
        self.weight_violations = []
        self.iterations = []
        self.unconverged = []

    def iteration(self, level, iteration, before, after, q):
        prev = set(before.nonempty_labels().tolist())
        now = set(after.nonempty_labels().tolist())
        if not now <= prev:
            self.label_violations.append((level, iteration, sorted(now - prev)))
        q_before = modularity(before)
        if q < q_before - 1e-9:
            self.monotonic_violations.append((level, iteration, q_before, q))

    def level_optimized(self, level, iterations, converged, q):
        self.iterations.append(iterations)
        if not converged:
            self.unconverged.append((level, iterations))

    def induced(self, level, parent, child):
        wp, wc = parent.total_weight, child.total_weight
        if abs(wp - wc) > 1e-12 * abs(wp):
            self.weight_violations.append((level, wp, wc))

    def clean(self):
        return not (self.label_violations or self.monotonic_violations or self.weight_violations)


@pytest.fixture
def recorder():
    return InvariantRecorder()


def same_dendrogram(a, b):
    return (
        len(a.levels) == len(b.levels)
        and all(np.array_equal(x, y) for x, y in zip(a.levels, b.levels))
        and a.modularity_per_level == b.modularity_per_level
    )


ACCEPTANCE_LINES = []


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""

    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
