"""Directed degree splitting.

Pipeline: split graph -> buckets -> disjoint voting blocks -> hypergraph
sinkless orientation -> one chop per owned bucket -> consistent orientation
of every path and cycle -> odd-degree refinement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .euler import euler_orient
from .graph import Graph, weak_diameter
from .hso import HsoAssignment, HsoInstance, build_hso_instance, solve_hso
from .split import (BucketId, BucketSet, Component, Direction, SplitGraph, build_split_graph,
                    components_paths_cycles, lift_orientation, make_buckets, sorted_incidence)
from .voting import VotingBlock, select_disjoint_blocks


@dataclass(frozen=True)
class Chop:
    block: int
    bucket: BucketId
    node: int
    half: Optional[int]  # None when the chosen node already had degree 1


@dataclass
class ChoppedSplitGraph:
    split: SplitGraph
    chops: list[Chop] = field(default_factory=list)

    def components(self) -> list[Component]:
        return components_paths_cycles(self.split)


def directed_ell(eps: float) -> int:
    return math.ceil(8 / eps)


def directed_x(deg: int, eps: float) -> int:
    return max(1, math.floor(eps * deg / 2))


def chop(s: SplitGraph, blocks: Sequence[VotingBlock], assignment: HsoAssignment,
         buckets: BucketSet) -> ChoppedSplitGraph:
    """Halve one node of P inside its assigned bucket for every block P.

    The chopped node is the minimum-key node of P in that bucket.  If it is
    the vertex's degree-1 copy nothing changes, since it already ends a path.
    """
    out = s._clone()
    chops = []
    for bi, he in sorted(assignment.phi().items()):
        blk = blocks[bi]
        members = {bid for bid in he}
        hits = [n for n in blk.nodes if buckets.of_node.get(n) in members]
        if not hits:
            raise ValueError(f"block {bi} does not meet its bucket {he}")
        node = min(hits, key=out.nodes.__getitem__)
        bucket = buckets.of_node[node]
        half = out._halve(node) if out.degree(node) == 2 else None
        chops.append(Chop(bi, bucket, node, half))
    return ChoppedSplitGraph(out, chops)


def orient_components(c: ChoppedSplitGraph | SplitGraph) -> dict[int, int]:
    """Split orientation (edge ID -> tail node) walking each component in canonical order."""
    s = c.split if isinstance(c, ChoppedSplitGraph) else c
    tails = {}
    for comp in components_paths_cycles(s):
        for i, e in enumerate(comp.edges):
            tails[e] = comp.nodes[i]
    return tails


def euler_sink_sourceless(g: Graph) -> dict[int, Direction]:
    """Euler-tour orientation: every vertex gets |in - out| <= 1."""
    res = euler_orient((eid, u, v) for eid, u, v in g.edges())
    return {eid: Direction.FORWARD if res[eid][0] == g.endpoints(eid)[0] else Direction.BACKWARD
            for eid in g.edge_ids}


def balanced_orientation_s(g: Graph, s: int) -> dict[int, Direction]:
    """At least floor(deg(v)/s) in- and out-edges per vertex.

    Each vertex is split into max(1, floor(deg/s)) copies taking contiguous
    near-equal shares of its edges; the copies are Euler-oriented.
    """
    if s < 3:
        raise ValueError("s must be >= 3")
    side: dict[tuple[int, int], tuple[int, int]] = {}
    for v in g.vertices:
        order = sorted_incidence(g, v)
        k = max(1, len(order) // s)
        q, r = divmod(len(order), k)
        pos = 0
        for c in range(k):
            size = q + (1 if c < r else 0)
            for e in order[pos:pos + size]:
                side[(e, v)] = (v, c)
            pos += size
    res = euler_orient((eid, side[(eid, u)], side[(eid, v)]) for eid, u, v in g.edges())
    return {eid: Direction.FORWARD if res[eid][0][0] == g.endpoints(eid)[0] else Direction.BACKWARD
            for eid in g.edge_ids}


@dataclass
class RefinementGraph:
    """Contracted multigraph on path ends; merged triples become one node."""

    edges: list[tuple[int, object, object]]  # (path index, end key, end key)
    paths: list[Component]
    merged: dict[int, int]  # end node -> creator, for merged ends


def build_refinement_graph(c: ChoppedSplitGraph) -> RefinementGraph:
    s = c.split
    ones: dict[int, list[int]] = {}
    for i in range(s.num_nodes):
        if s.degree(i) == 1:
            ones.setdefault(s.nodes[i].creator, []).append(i)
    g = s.graph
    merged = {}
    for v, lst in ones.items():
        if g.degree(v) % 2 == 1 and len(lst) == 3:
            for i in lst:
                merged[i] = v

    def key(i):
        return ("m", merged[i]) if i in merged else ("n", i)

    paths = []
    edges = []
    for comp in components_paths_cycles(s):
        if comp.is_cycle:
            continue
        a, z = comp.nodes[0], comp.nodes[-1]
        if a in merged or z in merged:
            edges.append((len(paths), key(a), key(z)))
            paths.append(comp)
    return RefinementGraph(edges, paths, merged)


def refine_odd(c: ChoppedSplitGraph, tails: Mapping[int, int]) -> dict[int, int]:
    """Reorient whole paths so each odd vertex with three path ends gets discrepancy 1.

    The three degree-1 copies of such a vertex act as one node of degree 3; an
    Euler orientation of the contracted graph gives it both an incoming and an
    outgoing path.  Paths not touching a merged node keep their direction.
    """
    rg = build_refinement_graph(c)
    out = dict(tails)
    if not rg.edges:
        return out
    res = euler_orient(rg.edges)
    for idx, comp in enumerate(rg.paths):
        tail_key, _ = res[idx]
        first = rg.edges[idx][1]
        forward = tail_key == first
        for i, e in enumerate(comp.edges):
            out[e] = comp.nodes[i] if forward else comp.nodes[i + 1]
    return out


@dataclass
class DirectedResult:
    orientation: dict[int, Direction]
    ell: int
    eps: float
    split: SplitGraph
    buckets: BucketSet
    blocks: list[VotingBlock]
    hso: HsoInstance
    assignment: HsoAssignment
    chopped: ChoppedSplitGraph
    tails_consistent: dict[int, int]
    tails_final: dict[int, int]

    def component_diameters(self) -> list[float]:
        return component_weak_diameters(self.chopped.split)


def component_weak_diameters(s: SplitGraph) -> list[float]:
    """Weak diameter of every component of ``s``."""
    out = []
    g = s.graph
    for comp in components_paths_cycles(s):
        creators = {s.nodes[i].creator for i in comp.nodes}
        out.append(len(creators) - 1 if len(creators) <= 2 else weak_diameter(g, creators))
    return out


def run_directed(g: Graph, eps: float, ell: Optional[int] = None) -> DirectedResult:
    if not eps > 0:
        raise ValueError("epsilon must be positive")
    ell = ell or directed_ell(eps)
    s = build_split_graph(g)
    buckets = make_buckets(s, lambda v: directed_x(g.degree(v), eps))
    blocks = select_disjoint_blocks(s, ell)
    h = build_hso_instance(blocks, buckets)
    a = solve_hso(h)
    c = chop(s, blocks, a, buckets)
    tails = orient_components(c)
    final = refine_odd(c, tails)
    o = lift_orientation(c.split, final)
    return DirectedResult(o, ell, eps, s, buckets, blocks, h, a, c, tails, final)


def directed_split(g: Graph, eps: float) -> dict[int, Direction]:
    """Orientation with |in - out| <= eps*deg(v) + 1 (odd degree) or + 2 (even degree)."""
    return run_directed(g, eps).orientation
