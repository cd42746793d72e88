"""Split graphs: every vertex replaced by virtual copies of degree at most two.

Virtual nodes are addressed by integer index into ``SplitGraph.nodes``.  Each
G-edge ``eid`` appears exactly once in the split graph, between
``ends[eid][0]`` (a copy of the edge's first endpoint) and ``ends[eid][1]``
(a copy of the second).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, NamedTuple, Union

from .graph import Graph


class Direction(enum.IntEnum):
    """Orientation of a G-edge relative to its endpoint order ``(u, v)``."""

    FORWARD = 1  # u -> v
    BACKWARD = -1  # v -> u
    UNORIENTED = 0


class Color(enum.IntEnum):
    RED = 1
    BLUE = -1


class VirtualNode(NamedTuple):
    """A virtual copy.  ``part`` is 0 for an intact copy and 1 or 2 for the halves of a chopped one."""

    creator: int
    copy_index: int
    part: int = 0


@dataclass(frozen=True)
class Component:
    """A path or cycle of the split graph in canonical traversal order.

    ``edges[i]`` joins ``nodes[i]`` and ``nodes[i + 1]``; on a cycle the last
    edge wraps back to ``nodes[0]``.
    """

    kind: str
    nodes: tuple[int, ...]
    edges: tuple[int, ...]

    @property
    def is_cycle(self) -> bool:
        return self.kind == "cycle"

    def __len__(self) -> int:
        return len(self.nodes)


class SplitGraph:
    """Virtual-node graph in edge bijection with ``graph``.

    Public operations never mutate an existing instance; the underscore
    helpers are used on private clones by the pipelines.
    """

    def __init__(self, graph: Graph, nodes: list[VirtualNode], ends: list[list[int]], inc: list[list[int]]):
        self.graph = graph
        self.nodes = nodes
        self.ends = ends
        self.inc = inc

    # -- queries -----------------------------------------------------------
    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    def degree(self, i: int) -> int:
        return len(self.inc[i])

    def creator(self, i: int) -> int:
        return self.nodes[i].creator

    def key(self, i: int) -> VirtualNode:
        return self.nodes[i]

    def other(self, eid: int, i: int) -> int:
        a, b = self.ends[eid]
        return b if a == i else a

    def split_edges(self) -> list[tuple[int, int, int]]:
        return [(eid, self.ends[eid][0], self.ends[eid][1]) for eid in self.graph.edge_ids]

    def copies(self) -> dict[int, list[int]]:
        """Creator -> node indices ordered by (copy_index, part)."""
        out: dict[int, list[int]] = {}
        for i, nd in enumerate(self.nodes):
            out.setdefault(nd.creator, []).append(i)
        for lst in out.values():
            lst.sort(key=lambda i: self.nodes[i])
        return out

    def degree_profile(self) -> dict[int, list[int]]:
        """Creator -> sorted list of copy degrees."""
        out: dict[int, list[int]] = {}
        for i, nd in enumerate(self.nodes):
            out.setdefault(nd.creator, []).append(len(self.inc[i]))
        for lst in out.values():
            lst.sort()
        return out

    def to_json(self) -> dict:
        return {
            "nodes": [[nd.creator, nd.copy_index, nd.part] for nd in self.nodes],
            "edges": [list(t) for t in self.split_edges()],
        }

    # -- private mutation helpers -------------------------------------------
    def _clone(self) -> "SplitGraph":
        return SplitGraph(self.graph, list(self.nodes), [list(x) for x in self.ends], [list(x) for x in self.inc])

    def _move_edge(self, eid: int, src: int, dst: int) -> None:
        pair = self.ends[eid]
        if pair[0] == src:
            pair[0] = dst
        elif pair[1] == src:
            pair[1] = dst
        else:
            raise ValueError(f"edge {eid} is not attached to node {src}")
        self.inc[src].remove(eid)
        self.inc[dst].append(eid)

    def _halve(self, i: int) -> int:
        """Split degree-2 node ``i`` into two halves; returns the new node index."""
        if len(self.inc[i]) != 2:
            raise ValueError(f"node {i} has degree {len(self.inc[i])}, cannot halve")
        nd = self.nodes[i]
        keep, moved = sorted(self.inc[i])
        self.nodes[i] = VirtualNode(nd.creator, nd.copy_index, 1)
        j = len(self.nodes)
        self.nodes.append(VirtualNode(nd.creator, nd.copy_index, 2))
        self.inc.append([])
        self._move_edge(moved, i, j)
        return j


def sorted_incidence(g: Graph, v: int) -> list[int]:
    """Incident edge IDs of ``v`` sorted by (neighbor ID, edge ID)."""
    return sorted(g.incident(v), key=lambda e: (g.other(e, v), e))


def build_split_graph(g: Graph) -> SplitGraph:
    """Give the i-th incident edge of v (sorted by neighbor, then edge ID) to copy ceil(i/2)."""
    nodes: list[VirtualNode] = []
    inc: list[list[int]] = []
    ends = [[-1, -1] for _ in range(g.m + 1)]
    for v in g.vertices:
        order = sorted_incidence(g, v)
        base = len(nodes)
        for c in range((len(order) + 1) // 2):
            nodes.append(VirtualNode(v, c + 1))
            inc.append([])
        for pos, eid in enumerate(order):
            node = base + pos // 2
            inc[node].append(eid)
            side = 0 if g.endpoints(eid)[0] == v else 1
            ends[eid][side] = node
    return SplitGraph(g, nodes, ends, inc)


# -- components -----------------------------------------------------------

def _walk(s: SplitGraph, start: int, first_edge: int | None, seen: bytearray) -> tuple[list[int], list[int]]:
    nodes = [start]
    edges: list[int] = []
    seen[start] = 1
    cur, e = start, first_edge
    while e is not None:
        nxt = s.other(e, cur)
        if seen[nxt]:
            edges.append(e)  # closes a cycle
            break
        edges.append(e)
        nodes.append(nxt)
        seen[nxt] = 1
        rest = [f for f in s.inc[nxt] if f != e]
        cur, e = nxt, (rest[0] if rest else None)
    return nodes, edges


def components_paths_cycles(s: SplitGraph) -> list[Component]:
    """All components, each in canonical order, sorted by their first node's key.

    Paths start from the endpoint with the smaller key.  Cycles start at their
    minimum-key node and step first toward the smaller-key neighbor (smaller
    edge ID on ties).
    """
    order = sorted(range(s.num_nodes), key=s.nodes.__getitem__)
    seen = bytearray(s.num_nodes)
    comps: list[Component] = []
    for i in order:
        if not seen[i] and len(s.inc[i]) <= 1:
            first = s.inc[i][0] if s.inc[i] else None
            nodes, edges = _walk(s, i, first, seen)
            comps.append(Component("path", tuple(nodes), tuple(edges)))
    for i in order:
        if seen[i]:
            continue
        e1, e2 = s.inc[i]
        k1 = (s.nodes[s.other(e1, i)], e1)
        k2 = (s.nodes[s.other(e2, i)], e2)
        first = e1 if k1 < k2 else e2
        nodes, edges = _walk(s, i, first, seen)
        comps.append(Component("cycle", tuple(nodes), tuple(edges)))
    comps.sort(key=lambda c: s.nodes[c.nodes[0]])
    return comps


def true_length(s: SplitGraph, c: Component | Iterable[int]) -> int:
    """Number of distinct creators among the nodes."""
    nodes = c.nodes if isinstance(c, Component) else c
    return len({s.nodes[i].creator for i in nodes})


# -- buckets ---------------------------------------------------------------

BucketId = tuple[int, int]


@dataclass(frozen=True)
class BucketSet:
    """Per-vertex contiguous groups of virtual copies.

    ``buckets[(v, i)]`` holds node indices of v's i-th bucket (1-based);
    ``of_node`` is the inverse map.
    """

    x: dict[int, int]
    buckets: dict[BucketId, tuple[int, ...]]
    of_node: dict[int, BucketId] = field(repr=False)

    def of_vertex(self, v: int) -> list[BucketId]:
        return [(v, i) for i in range(1, self.x.get(v, 0) + 1)]


def make_buckets(s: SplitGraph, x: Union[Mapping[int, int], Callable[[int], int]]) -> BucketSet:
    """Partition each vertex's copies into x(v) contiguous buckets of near-equal size."""
    get = x if callable(x) else x.__getitem__
    copies = s.copies()
    xs: dict[int, int] = {}
    buckets: dict[BucketId, tuple[int, ...]] = {}
    of_node: dict[int, BucketId] = {}
    for v in s.graph.vertices:
        lst = copies.get(v)
        if not lst:
            continue
        xv = int(get(v))
        if not 1 <= xv <= len(lst):
            raise ValueError(f"x({v}) = {xv} outside [1, {len(lst)}]")
        xs[v] = xv
        q, r = divmod(len(lst), xv)
        pos = 0
        for b in range(1, xv + 1):
            size = q + (1 if b <= r else 0)
            members = tuple(lst[pos:pos + size])
            pos += size
            buckets[(v, b)] = members
            for node in members:
                of_node[node] = (v, b)
    return BucketSet(xs, buckets, of_node)


# -- labelings -------------------------------------------------------------

def lift_orientation(s: SplitGraph, tails: Mapping[int, int]) -> dict[int, Direction]:
    """Turn a split orientation (edge ID -> tail node) into a G orientation."""
    g = s.graph
    out: dict[int, Direction] = {}
    for eid in g.edge_ids:
        if eid not in tails:
            raise ValueError(f"split orientation is missing edge {eid}")
        tail = tails[eid]
        if tail not in s.ends[eid]:
            raise ValueError(f"node {tail} is not an end of split edge {eid}")
        out[eid] = Direction.FORWARD if s.nodes[tail].creator == g.endpoints(eid)[0] else Direction.BACKWARD
    return out


def split_orientation(s: SplitGraph, o: Mapping[int, Direction]) -> dict[int, int]:
    """Inverse of :func:`lift_orientation`: edge ID -> tail node."""
    out = {}
    for eid in s.graph.edge_ids:
        d = o[eid]
        if d == Direction.UNORIENTED:
            raise ValueError(f"edge {eid} is unoriented")
        out[eid] = s.ends[eid][0] if d == Direction.FORWARD else s.ends[eid][1]
    return out


def discrepancy(g: Graph, o: Mapping[int, Direction]) -> dict[int, int]:
    """|indegree - outdegree| per vertex of a total orientation."""
    bal = [0] * (g.n + 1)
    for eid, u, v in g.edges():
        d = o.get(eid, Direction.UNORIENTED)
        if d == Direction.UNORIENTED:
            raise ValueError(f"edge {eid} is unoriented")
        tail, head = (u, v) if d == Direction.FORWARD else (v, u)
        bal[tail] -= 1
        bal[head] += 1
    return {v: abs(bal[v]) for v in g.vertices}


def color_discrepancy(g: Graph, c: Mapping[int, Color]) -> dict[int, int]:
    """|#red - #blue| per vertex."""
    bal = [0] * (g.n + 1)
    for eid, u, v in g.edges():
        sign = 1 if c[eid] == Color.RED else -1
        bal[u] += sign
        bal[v] += sign
    return {v: abs(bal[v]) for v in g.vertices}
