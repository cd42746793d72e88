"""Undirected multigraphs with stable vertex and edge IDs.

Vertices are the integers 1..n.  Edges carry IDs 1..m in insertion order,
so parallel edges stay distinguishable.  Self-loops are rejected.
"""

from __future__ import annotations

import json
import math
from collections import deque
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

INF = math.inf


class GraphError(ValueError):
    """Base class for malformed graph input."""


class GraphParseError(GraphError):
    pass


class GraphValidationError(GraphError):
    pass


class Graph:
    """Immutable undirected multigraph.

    ``endpoints(eid)`` returns ``(u, v)`` in the order the edge was given; the
    first endpoint defines the FORWARD direction of an orientation.
    """

    __slots__ = ("n", "_u", "_v", "_inc")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise GraphValidationError(f"vertex count must be >= 0, got {n}")
        self.n = int(n)
        us = [0]
        vs = [0]
        inc: list[list[int]] = [[] for _ in range(self.n + 1)]
        for eid, (u, v) in enumerate(edges, start=1):
            u, v = int(u), int(v)
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphValidationError(f"edge {eid} = ({u}, {v}) has a vertex outside [1, {self.n}]")
            if u == v:
                raise GraphValidationError(f"edge {eid} is a self-loop at {u}")
            us.append(u)
            vs.append(v)
            inc[u].append(eid)
            inc[v].append(eid)
        self._u = tuple(us)
        self._v = tuple(vs)
        self._inc = tuple(tuple(x) for x in inc)

    @property
    def m(self) -> int:
        return len(self._u) - 1

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def edge_ids(self) -> range:
        return range(1, self.m + 1)

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(eid, u, v)`` in ID order."""
        for eid in range(1, self.m + 1):
            yield eid, self._u[eid], self._v[eid]

    def endpoints(self, eid: int) -> tuple[int, int]:
        return self._u[eid], self._v[eid]

    def other(self, eid: int, x: int) -> int:
        u, v = self._u[eid], self._v[eid]
        if x == u:
            return v
        if x == v:
            return u
        raise ValueError(f"vertex {x} is not an endpoint of edge {eid}")

    def incident(self, v: int) -> tuple[int, ...]:
        return self._inc[v]

    def degree(self, v: int) -> int:
        return len(self._inc[v])

    def neighbors(self, v: int) -> list[int]:
        """Neighbor multiset of ``v`` (one entry per incident edge)."""
        return [self.other(e, v) for e in self._inc[v]]

    @property
    def max_degree(self) -> int:
        return max((len(x) for x in self._inc[1:]), default=0)

    def multiplicity(self) -> int:
        """Largest number of parallel edges between one vertex pair."""
        counts: dict[tuple[int, int], int] = {}
        for _, u, v in self.edges():
            key = (u, v) if u < v else (v, u)
            counts[key] = counts.get(key, 0) + 1
        return max(counts.values(), default=0)

    def edge_subgraph(self, eids: Iterable[int]) -> tuple["Graph", list[int]]:
        """Graph on the same vertex set keeping only ``eids``.

        Returns the subgraph and the list mapping new edge IDs (index) to
        original IDs; index 0 is a placeholder.
        """
        keep = sorted(eids)
        sub = Graph(self.n, [(self._u[e], self._v[e]) for e in keep])
        return sub, [0] + keep

    def to_edge_list(self) -> str:
        lines = [str(self.n)]
        lines.extend(f"{u} {v}" for _, u, v in self.edges())
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [[u, v] for _, u, v in self.edges()]}

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._u == other._u and self._v == other._v

    def __hash__(self) -> int:
        return hash((self.n, self._u, self._v))


def load_graph(text: str) -> Graph:
    """Parse the edge-list format, or the JSON mirror if the text starts with ``{``."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return load_graph_json(stripped)
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise GraphParseError(f"line {lineno}: expected integers, got {raw!r}") from None
        if n is None:
            if len(nums) != 1:
                raise GraphParseError(f"line {lineno}: first line must hold the vertex count")
            n = nums[0]
            continue
        if len(nums) != 2:
            raise GraphParseError(f"line {lineno}: expected 'u v', got {raw!r}")
        edges.append((nums[0], nums[1]))
    if n is None:
        raise GraphParseError("missing vertex count")
    return Graph(n, edges)


def load_graph_json(text: str) -> Graph:
    try:
        doc = json.loads(text)
        n = int(doc["n"])
        edges = [(int(a), int(b)) for a, b in doc["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphParseError(f"bad JSON graph: {exc}") from None
    return Graph(n, edges)


def read_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return load_graph(fh.read())


def _check_vertex(g: Graph, v: int) -> None:
    if not (1 <= v <= g.n):
        raise GraphValidationError(f"vertex {v} outside [1, {g.n}]")


def bfs_distances(g: Graph, s: int) -> dict[int, float]:
    """Hop distances from ``s``; unreachable vertices map to ``INF``."""
    _check_vertex(g, s)
    dist: dict[int, float] = {v: INF for v in g.vertices}
    dist[s] = 0
    queue = deque([s])
    while queue:
        x = queue.popleft()
        dx = dist[x] + 1
        for e in g.incident(x):
            y = g.other(e, x)
            if dist[y] == INF:
                dist[y] = dx
                queue.append(y)
    return dist


def multi_source_distances(g: Graph, sources: Iterable[int], limit: float = INF) -> dict[int, int]:
    """Distances from the nearest source, truncated at ``limit`` (absent keys are farther)."""
    dist: dict[int, int] = {}
    queue: deque[int] = deque()
    for s in sources:
        if s not in dist:
            dist[s] = 0
            queue.append(s)
    while queue:
        x = queue.popleft()
        dx = dist[x] + 1
        if dx > limit:
            continue
        for e in g.incident(x):
            y = g.other(e, x)
            if y not in dist:
                dist[y] = dx
                queue.append(y)
    return dist


# Sources per scipy call; bounds the dense distance block to CHUNK x k.
_CHUNK = 512


def weak_diameter(g: Graph, creators: Iterable[int]) -> float:
    """Diameter of the subgraph of ``g`` induced by ``creators``.

    Returns ``INF`` when the induced subgraph is disconnected.
    """
    verts = sorted(set(creators))
    if not verts:
        raise GraphValidationError("weak diameter of an empty vertex set")
    for v in verts:
        _check_vertex(g, v)
    k = len(verts)
    if k == 1:
        return 0
    index = {v: i for i, v in enumerate(verts)}
    rows, cols = [], []
    for v in verts:
        i = index[v]
        for e in g.incident(v):
            j = index.get(g.other(e, v))
            if j is not None:
                rows.append(i)
                cols.append(j)
    if not rows:
        return INF
    adj = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(k, k))
    best = 0.0
    for start in range(0, k, _CHUNK):
        block = shortest_path(adj, directed=False, unweighted=True, indices=list(range(start, min(k, start + _CHUNK))))
        top = block.max()
        if not np.isfinite(top):
            return INF
        best = max(best, float(top))
    return int(best)


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex partition into connected components, each sorted, ordered by minimum vertex."""
    seen = [False] * (g.n + 1)
    out = []
    for s in g.vertices:
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for e in g.incident(x):
                y = g.other(e, x)
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comp.sort()
        out.append(comp)
    return out
