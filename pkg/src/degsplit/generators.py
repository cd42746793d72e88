"""Seeded graph generators."""

from __future__ import annotations

import math
import random
from collections import defaultdict

from .graph import Graph


def _suitable(edges: set[tuple[int, int]], pending: dict[int, int]) -> bool:
    """Whether two pending stubs can still be joined without a loop or repeat."""
    if not pending:
        return True
    verts = list(pending)
    for i, a in enumerate(verts):
        for b in verts[i + 1:]:
            key = (a, b) if a < b else (b, a)
            if key not in edges:
                return True
    return False


def _attempt(n: int, d: int, rng: random.Random) -> set[tuple[int, int]] | None:
    edges: set[tuple[int, int]] = set()
    stubs = [v for v in range(1, n + 1) for _ in range(d)]
    while stubs:
        pending: dict[int, int] = defaultdict(int)
        rng.shuffle(stubs)
        it = iter(stubs)
        for a, b in zip(it, it):
            key = (a, b) if a < b else (b, a)
            if a != b and key not in edges:
                edges.add(key)
            else:
                pending[a] += 1
                pending[b] += 1
        if not _suitable(edges, pending):
            return None
        stubs = [v for v, c in sorted(pending.items()) for _ in range(c)]
    return edges


def gen_random_regular(n: int, d: int, seed: int = 0) -> Graph:
    """Simple d-regular graph from the pairing model, re-pairing stubs that form loops or repeats."""
    if d < 0 or n < 0:
        raise ValueError("n and d must be non-negative")
    if (n * d) % 2:
        raise ValueError(f"n * d must be even (n={n}, d={d})")
    if d >= n and d > 0:
        raise ValueError(f"d must be < n (n={n}, d={d})")
    rng = random.Random(seed)
    while True:
        edges = _attempt(n, d, rng)
        if edges is not None:
            return Graph(n, sorted(edges))


def gen_shannon(mu: float) -> Graph:
    """Triangle with multiplicities floor(mu), floor(mu), ceil(mu)."""
    if mu < 1:
        raise ValueError("mu must be >= 1")
    lo, hi = math.floor(mu), math.ceil(mu)
    return Graph(3, [(1, 2)] * lo + [(2, 3)] * lo + [(1, 3)] * hi)


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, i % n + 1) for i in range(1, n + 1)])


def gen_path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(1, n)])


def gen_petersen() -> Graph:
    outer = [(i, i % 5 + 1) for i in range(1, 6)]
    spokes = [(i, i + 5) for i in range(1, 6)]
    inner = [(5 + i, 5 + (i + 1) % 5 + 1) for i in range(1, 6)]
    return Graph(10, outer + spokes + inner)


def gen_random_multigraph(n: int, d: int, seed: int = 0) -> Graph:
    """d-regular multigraph from one round of the pairing model; loops re-drawn, parallels kept."""
    if (n * d) % 2:
        raise ValueError(f"n * d must be even (n={n}, d={d})")
    rng = random.Random(seed)
    while True:
        stubs = [v for v in range(1, n + 1) for _ in range(d)]
        rng.shuffle(stubs)
        pairs = list(zip(stubs[::2], stubs[1::2]))
        if all(a != b for a, b in pairs):
            return Graph(n, pairs)
