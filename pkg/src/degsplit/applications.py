"""Multiway splitting and edge coloring built on undirected splitting."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import Graph
from .split import Color
from .undirected import undirected_split


@dataclass(frozen=True)
class EdgePartition:
    parts: dict[int, int]
    k: int

    @property
    def num_parts(self) -> int:
        return 2 ** self.k


@dataclass(frozen=True)
class EdgeColoring:
    colors: dict[int, int]
    palette: int
    levels: int = 0
    degree_trace: tuple[int, ...] = ()
    leaf_palettes: tuple[tuple[int, int], ...] = ()  # (first color, size) per leaf


def _halves(g: Graph, eids: list[int], eps: float) -> tuple[list[int], list[int]]:
    sub, emap = g.edge_subgraph(eids)
    col = undirected_split(sub, eps)
    red = [emap[e] for e in sub.edge_ids if col[e] == Color.RED]
    blue = [emap[e] for e in sub.edge_ids if col[e] == Color.BLUE]
    return red, blue


def multiway_split(g: Graph, k: int, eps: float) -> EdgePartition:
    """Split the edges into 2**k parts by k rounds of red/blue splitting with eps/(2k)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if not eps > 0:
        raise ValueError("epsilon must be positive")
    sub_eps = eps / (2 * k)
    groups = [list(g.edge_ids)]
    for _ in range(k):
        nxt = []
        for grp in groups:
            red, blue = _halves(g, grp, sub_eps) if grp else ([], [])
            nxt.extend([red, blue])
        groups = nxt
    parts = {e: idx for idx, grp in enumerate(groups) for e in grp}
    return EdgePartition(parts, k)


class _FanColorer:
    """Fan recoloring with K = min(Delta + mu, floor(3 Delta / 2)) colors.

    An uncolored edge is colored directly when its endpoints miss a common
    color.  Otherwise a fan is grown at one endpoint until it can be folded,
    or until two distinct rim vertices miss a common color, in which case a
    Kempe chain swap makes it foldable.
    """

    def __init__(self, g: Graph, K: int):
        self.g = g
        self.K = K
        self.palette = range(1, K + 1)
        self.color = [0] * (g.m + 1)
        self.at: list[dict[int, int]] = [dict() for _ in range(g.n + 1)]

    def missing(self, v: int) -> set[int]:
        here = self.at[v]
        return {c for c in self.palette if c not in here}

    def paint(self, e: int, c: int) -> None:
        u, v = self.g.endpoints(e)
        old = self.color[e]
        if old:
            del self.at[u][old]
            del self.at[v][old]
        self.color[e] = c
        self.at[u][c] = e
        self.at[v][c] = e

    def color_edge(self, e: int) -> None:
        u, v = self.g.endpoints(e)
        both = self.missing(u) & self.missing(v)
        if both:
            self.paint(e, min(both))
        else:
            self.fan(e)

    def fan(self, e: int) -> None:
        g = self.g
        u, v = g.endpoints(e)
        x = u if (g.degree(u), u) <= (g.degree(v), v) else v
        fan = [e]
        rim = [g.other(e, x)]
        cands = [f for f in g.incident(x) if self.color[f]]
        seen_missing = set(self.missing(rim[0]))
        while True:
            nxt = next((f for f in cands if self.color[f] in seen_missing), None)
            if nxt is None:
                raise RuntimeError("fan cannot grow; palette too small")
            cands.remove(nxt)
            fan.append(nxt)
            yn = g.other(nxt, x)
            rim.append(yn)
            miss_n = self.missing(yn)
            seen_missing |= miss_n
            if miss_n & self.missing(x):
                self.fold(x, fan, rim)
                return
            for i, yi in enumerate(rim[:-1]):
                if yi != yn and miss_n & self.missing(yi):
                    self.reduce(x, fan, rim, i)
                    return

    def fold(self, x: int, fan: list[int], rim: list[int]) -> None:
        while True:
            new = min(self.missing(x) & self.missing(rim[-1]))
            old = self.color[fan[-1]]
            self.paint(fan[-1], new)
            if len(fan) == 1:
                return
            idx = next(i for i in range(len(rim) - 1) if old not in self.at[rim[i]])
            del fan[idx + 1:]
            del rim[idx + 1:]

    def reduce(self, x: int, fan: list[int], rim: list[int], i: int) -> None:
        yi, yn = rim[i], rim[-1]
        a = min(self.missing(yn) & self.missing(yi))
        b = min(self.missing(x))
        if self.swap_chain(yi, a, b, x):
            del fan[i + 1:]
            del rim[i + 1:]
        else:
            self.swap_chain(yn, a, b, x)
        self.fold(x, fan, rim)

    def swap_chain(self, y: int, a: int, b: int, x: int) -> bool:
        """Swap the a/b chain starting at ``y`` unless it ends at ``x``."""
        chain = []
        z, cur = y, b
        while cur in self.at[z]:
            f = self.at[z][cur]
            chain.append(f)
            z = self.g.other(f, z)
            cur = a if cur == b else b
        if z == x:
            return False
        for f in chain:
            p, q = self.g.endpoints(f)
            c = self.color[f]
            del self.at[p][c]
            del self.at[q][c]
        for f in chain:
            p, q = self.g.endpoints(f)
            c = a if self.color[f] == b else b
            self.color[f] = c
            self.at[p][c] = f
            self.at[q][c] = f
        return True


def base_palette_size(g: Graph) -> int:
    delta = g.max_degree
    if delta <= 1:
        return delta
    return min(delta + g.multiplicity(), 3 * delta // 2)


def base_edge_coloring(g: Graph) -> EdgeColoring:
    """Proper coloring with min(Delta + mu, floor(3 Delta / 2)) colors (Delta + 1 on simple graphs)."""
    K = base_palette_size(g)
    fc = _FanColorer(g, K)
    for e in g.edge_ids:
        fc.color_edge(e)
    return EdgeColoring({e: fc.color[e] for e in g.edge_ids}, K, 0, (g.max_degree,), ((1, K),))


def recursion_depth(delta: int, eps: float) -> int:
    """h = floor(log2(eps * Delta / 12)), or 0 when that is not positive."""
    t = eps * delta / 12
    return max(0, math.floor(math.log2(t))) if t >= 2 else 0


def edge_coloring(g: Graph, eps: float) -> EdgeColoring:
    """Proper edge coloring with at most ceil((3/2 + eps) * Delta) colors.

    Splits the edges h times with eps / (4 log2 Delta), then colors each of
    the 2**h leaf subgraphs with its own disjoint palette.
    """
    delta = g.max_degree
    if delta < 2:
        raise ValueError("maximum degree must be >= 2")
    if not eps > 1 / delta:
        raise ValueError("epsilon must exceed 1 / Delta")
    h = recursion_depth(delta, eps)
    if h == 0:
        return base_edge_coloring(g)
    sub_eps = eps / (4 * math.log2(delta))
    groups = [list(g.edge_ids)]
    trace = [delta]
    for _ in range(h):
        nxt = []
        for grp in groups:
            red, blue = _halves(g, grp, sub_eps) if grp else ([], [])
            nxt.extend([red, blue])
        groups = nxt
        trace.append(max(g.edge_subgraph(grp)[0].max_degree for grp in groups))
    colors: dict[int, int] = {}
    offset = 0
    leaves = []
    for grp in groups:
        sub, emap = g.edge_subgraph(grp)
        base = base_edge_coloring(sub)
        for e, c in base.colors.items():
            colors[emap[e]] = offset + c
        leaves.append((offset + 1, base.palette))
        offset += base.palette
    return EdgeColoring(colors, offset, h, tuple(trace), tuple(leaves))
