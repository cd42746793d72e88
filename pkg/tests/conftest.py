import random

import pytest
from hypothesis import strategies as st

from degsplit.graph import Graph


@st.composite
def multigraphs(draw, max_n=12, max_m=30, simple=False):
    n = draw(st.integers(2, max_n))
    pairs = st.tuples(st.integers(1, n), st.integers(1, n)).filter(lambda p: p[0] != p[1])
    edges = draw(st.lists(pairs, max_size=max_m))
    if simple:
        edges = sorted({(min(a, b), max(a, b)) for a, b in edges})
    return Graph(n, edges)


@pytest.fixture
def rng():
    return random.Random(12345)


def random_hso_instance(r: random.Random, n: int, rank: int, extra: int = 0):
    """Random hypergraph with max rank ``rank`` and min degree >= 2 * rank."""
    from degsplit.hso import HsoInstance

    need = 2 * rank + extra
    slots = [v for v in range(n) for _ in range(need)]
    r.shuffle(slots)
    edges = []
    for i in range(0, len(slots), rank):
        edges.append(frozenset(slots[i:i + rank]))
    deg = [0] * n
    for e in edges:
        for v in e:
            deg[v] += 1
    for v in range(n):
        while deg[v] < need:
            edges.append(frozenset([v]))
            deg[v] += 1
    return HsoInstance(tuple(range(n)), {("h", i): e for i, e in enumerate(edges)})


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record_criterion(num: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[num] = (ok, detail)
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} ({detail})")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}")
