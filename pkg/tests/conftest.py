import itertools

import pytest

from relaxcolor.graph import ColorScheme, Graph

ACCEPTANCE_LINES: list[str] = []


def brute_opt(g, s: ColorScheme):
    """Plain itertools enumeration, kept separate from both library code paths."""
    best = None
    wedges = g.weighted_edges()
    for c in itertools.product(range(s.k), repeat=g.n):
        if any(c[u] == c[v] and c[u] >= s.r for u, v, _ in wedges):
            continue
        val = sum(t for u, v, t in wedges if c[u] != c[v])
        best = val if best is None else max(best, val)
    return best


@pytest.fixture
def K3():
    return Graph.complete(3)


@pytest.fixture
def P3():
    return Graph.path(3)


@pytest.fixture
def C5():
    return Graph.cycle(5)


def record_acceptance(criterion: str, passed: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'}  {criterion}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
