from __future__ import annotations

import sys
from itertools import combinations, permutations
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from longcycles import Digraph

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "repo", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")


@st.composite
def digraphs(draw, min_n: int = 1, max_n: int = 7) -> Digraph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
    density = draw(st.sampled_from((0.2, 0.4, 0.6, 0.8)))
    keep = draw(st.lists(st.floats(0, 1), min_size=len(pairs), max_size=len(pairs)))
    return Digraph(n, [e for e, r in zip(pairs, keep) if r < density])


def brute_cycles(D: Digraph, k: int) -> list[tuple[int, ...]]:
    """Every k-cycle, each listed once from its smallest vertex."""
    found = []
    for subset in combinations(D.vertices, k):
        first, rest = subset[0], subset[1:]
        for order in permutations(rest):
            cyc = (first, *order)
            if all(D.has_arc(cyc[i], cyc[(i + 1) % k]) for i in range(k)):
                found.append(cyc)
    return found


def brute_spectrum(D: Digraph) -> set[int]:
    return {k for k in range(2, D.n + 1) if brute_cycles(D, k)}


def is_cycle_of(D: Digraph, seq) -> bool:
    vs = tuple(seq)
    return (
        len(vs) >= 2
        and len(set(vs)) == len(vs)
        and all(D.has_arc(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))
    )


@pytest.fixture(scope="session")
def class_cache(request) -> Path:
    path = Path(request.config.cache.mkdir("digraph_classes"))
    return path


# One line per acceptance criterion, printed after the run.
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
