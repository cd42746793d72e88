"""Undirected degree splitting (red/blue edge colorings).

Pipeline: split graph -> remove short cycles by edge-exchange merges ->
buckets -> voting blocks -> hypergraph sinkless orientation (endpoint
buckets of block-poor paths merged into one hyperedge) -> chops, with
buckets that already hold a degree-1 copy handled by a one-sided edge
exchange -> alternate colors along every path and cycle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .euler import euler_circuits
from .graph import INF, Graph, connected_components, multi_source_distances
from .hso import HsoAssignment, HsoInstance, build_hso_instance, solve_hso
from .split import (BucketId, BucketSet, Color, Component, SplitGraph, build_split_graph,
                    components_paths_cycles, make_buckets)
from .voting import ComponentIndex, VotingBlock, select_disjoint_blocks


def undirected_ell(eps: float) -> int:
    return math.ceil(16 / eps)


def undirected_x(deg: int, eps: float) -> int:
    return min(max(1, math.floor(eps * deg / 4)), max(1, (deg + 1) // 2))


# -- edge-exchange merges -------------------------------------------------

@dataclass(frozen=True)
class MergeOp:
    kind: str  # "cycle-cycle" or "cycle-path"
    creator: int
    v1: int  # copy on the cycle
    v2: int  # copy on the other component
    moved_from_v1: int
    moved_from_v2: int


def _exchange(work: SplitGraph, v1: int, v2: int, kind: str) -> MergeOp:
    """Swap one edge of cycle node ``v1`` with one edge of ``v2`` (same creator).

    The two components become one; a path stays a path, two cycles become a
    cycle.  Node degrees are unchanged.
    """
    e_out = max(work.inc[v1])
    f_out = min(work.inc[v2])
    work._move_edge(e_out, v1, v2)
    work._move_edge(f_out, v2, v1)
    return MergeOp(kind, work.nodes[v1].creator, v1, v2, e_out, f_out)


def _merge(s: SplitGraph, c1: Component, c2: Component, v: int, kind: str) -> SplitGraph:
    if not c1.is_cycle:
        raise ValueError("first component must be a cycle")
    if (kind == "cycle-cycle") != c2.is_cycle:
        raise ValueError(f"second component has the wrong kind for a {kind} merge")
    n1, n2 = set(c1.nodes), set(c2.nodes)
    if n1 & n2:
        raise ValueError("components are not disjoint")
    a = [i for i in c1.nodes if s.nodes[i].creator == v]
    b = [i for i in c2.nodes if s.nodes[i].creator == v]
    if not a or not b:
        raise ValueError(f"vertex {v} does not have copies in both components")
    work = s._clone()
    _exchange(work, min(a, key=s.nodes.__getitem__), min(b, key=s.nodes.__getitem__), kind)
    return work


def merge_cycles(s: SplitGraph, c1: Component, c2: Component, v: int) -> SplitGraph:
    """Join two disjoint cycles sharing creator ``v`` into one cycle."""
    return _merge(s, c1, c2, v, "cycle-cycle")


def merge_cycle_path(s: SplitGraph, c: Component, p: Component, v: int) -> SplitGraph:
    """Join a cycle into a path sharing creator ``v``; the path keeps its end creators."""
    return _merge(s, c, p, v, "cycle-path")


# -- girth increase -------------------------------------------------------

@dataclass(frozen=True)
class PlanEntry:
    cycle: int
    min_id: int
    max_comp: int
    tar: Optional[int]
    d: int


@dataclass
class MergePlan:
    comps: list[Component]
    entries: dict[int, PlanEntry]

    def is_acyclic(self) -> bool:
        state: dict[int, int] = {}
        for start in self.entries:
            path = []
            x: Optional[int] = start
            while x is not None and x in self.entries and state.get(x) is None:
                state[x] = 1
                path.append(x)
                x = self.entries[x].tar
            if x is not None and state.get(x) == 1:
                return False
            for y in path:
                state[y] = 2
        return True


class _UF:
    def __init__(self, n: int):
        self.p = list(range(n))

    def find(self, x: int) -> int:
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a: int, b: int) -> None:
        self.p[self.find(a)] = self.find(b)


def _comp_tables(s: SplitGraph, comps: list[Component]):
    comp_of = [0] * s.num_nodes
    creators: list[set[int]] = []
    by_vertex: dict[int, set[int]] = {}
    for ci, c in enumerate(comps):
        cs = set()
        for i in c.nodes:
            comp_of[i] = ci
            v = s.nodes[i].creator
            cs.add(v)
            by_vertex.setdefault(v, set()).add(ci)
        creators.append(cs)
    return comp_of, creators, by_vertex


def plan_merges(s: SplitGraph, ell: int) -> MergePlan:
    """Max/Tar/d for every short cycle (fewer than ``ell`` creators).

    f(X) is the true length of a short cycle and infinity otherwise.  Max(S)
    maximizes (f, tiebreak) over components within G-distance 2*ell of S, the
    tiebreak preferring the smaller (minimum creator, its smallest neighbor
    creator, minimum edge ID).  Tar(S) is Max(S) when they share a creator;
    otherwise a component sharing a creator with S that is strictly closer to
    Max(S).
    """
    g = s.graph
    comps = components_paths_cycles(s)
    comp_of, creators, by_vertex = _comp_tables(s, comps)
    f = []
    rank = []
    for ci, c in enumerate(comps):
        tl = len(creators[ci])
        fi = tl if (c.is_cycle and tl < ell) else INF
        f.append(fi)
        minc = min(creators[ci])
        nbr = min(s.nodes[s.other(e, i)].creator for i in c.nodes if s.nodes[i].creator == minc for e in s.inc[i])
        rank.append((fi, -minc, -nbr, -min(c.edges)))
    entries: dict[int, PlanEntry] = {}
    for ci, c in enumerate(comps):
        if f[ci] == INF:
            continue
        dist = multi_source_distances(g, creators[ci], limit=2 * ell)
        near: dict[int, int] = {}
        for y, dy in dist.items():
            for cj in by_vertex.get(y, ()):
                if dy < near.get(cj, INF):
                    near[cj] = dy
        best = max(near, key=rank.__getitem__)
        d = near[best]
        if best == ci:
            entries[ci] = PlanEntry(ci, min(creators[ci]), ci, None, 0)
            continue
        if d == 0:
            tar = best
        else:
            back = multi_source_distances(g, creators[best], limit=d - 1)
            options = {cj for y in creators[ci] for cj in by_vertex[y]
                       if cj != ci and min((back.get(z, INF) for z in creators[cj]), default=INF) <= d - 1}
            tar = min(options, key=lambda cj: (-rank[cj][1], -rank[cj][2], -rank[cj][3]))
        entries[ci] = PlanEntry(ci, min(creators[ci]), best, tar, d)
    return MergePlan(comps, entries)


def _join(work: SplitGraph, uf: _UF, comp_of: list[int], creators: list[set[int]],
          copies: dict[int, list[int]], a: int, b: int) -> Optional[MergeOp]:
    """Merge the (intact cycle) component ``a`` into the current component of ``b``."""
    shared = sorted(creators[a] & creators[b])
    rb = uf.find(b)
    for x in shared:
        v1 = next(i for i in copies[x] if comp_of[i] == a)
        v2 = next((i for i in copies[x] if comp_of[i] != a and uf.find(comp_of[i]) == rb), None)
        if v2 is None:
            continue
        kind = "cycle-path" if work.degree(v2) == 1 or _on_path(work, v2) else "cycle-cycle"
        op = _exchange(work, v1, v2, kind)
        uf.union(a, b)
        return op
    return None


def _on_path(s: SplitGraph, start: int) -> bool:
    """Whether ``start`` lies on a path component (walks to an end or back to start)."""
    prev_e = None
    cur = start
    while True:
        nxt_e = next((e for e in s.inc[cur] if e != prev_e), None)
        if nxt_e is None:
            return True
        cur = s.other(nxt_e, cur)
        prev_e = nxt_e
        if cur == start:
            return False
        if len(s.inc[cur]) == 1:
            return True


@dataclass
class GirthReport:
    plan: MergePlan
    plan_merges: list[MergeOp]
    residual_merges: list[MergeOp]
    short_cycles_left: int


def increase_girth_report(s: SplitGraph, ell: int) -> tuple[SplitGraph, GirthReport]:
    work = s._clone()
    plan = plan_merges(work, ell)
    if not plan.is_acyclic():
        raise RuntimeError("merge plan contains a directed cycle")
    comps = plan.comps
    comp_of, creators, _ = _comp_tables(work, comps)
    copies = work.copies()
    uf = _UF(len(comps))

    depth: dict[int, int] = {}

    def depth_of(ci: int) -> int:
        chain = []
        x = ci
        while x in plan.entries and plan.entries[x].tar is not None and x not in depth:
            chain.append(x)
            x = plan.entries[x].tar
        base = depth.get(x, 0)
        for y in reversed(chain):
            base += 1
            depth[y] = base
        return depth.get(ci, 0)

    ordered = sorted((e for e in plan.entries.values() if e.tar is not None),
                     key=lambda e: (depth_of(e.cycle), e.cycle))
    done = []
    for e in ordered:
        if uf.find(e.cycle) == uf.find(e.tar):
            continue
        op = _join(work, uf, comp_of, creators, copies, e.cycle, e.tar)
        if op is not None:
            done.append(op)

    residual = []
    while True:
        comps = components_paths_cycles(work)
        comp_of, creators, by_vertex = _comp_tables(work, comps)
        short = [ci for ci, c in enumerate(comps) if c.is_cycle and len(creators[ci]) < ell]
        if not short:
            break
        uf = _UF(len(comps))
        touched: set[int] = set()
        merged = False
        for ci in short:
            if ci in touched:
                continue
            others = sorted({cj for y in creators[ci] for cj in by_vertex[y] if uf.find(cj) != uf.find(ci)})
            if not others:
                continue
            op = _join(work, uf, comp_of, creators, copies, ci, others[0])
            if op is not None:
                residual.append(op)
                touched.add(ci)
                touched.add(others[0])
                merged = True
        if not merged:
            break
    left = sum(1 for ci, c in enumerate(comps) if c.is_cycle and len(creators[ci]) < ell)
    return work, GirthReport(plan, done, residual, left)


def increase_girth(s: SplitGraph, ell: int) -> SplitGraph:
    """Rewire ``s`` so every cycle has at least ``ell`` distinct creators.

    Short cycles that cover a whole connected component of fewer than ``ell``
    vertices cannot be removed and are left in place.
    """
    return increase_girth_report(s, ell)[0]


# -- splitting ------------------------------------------------------------

@dataclass(frozen=True)
class Operation:
    kind: str  # "chop", "exchange" or "none"
    block: int
    bucket: BucketId
    node: int
    partner: Optional[int] = None  # degree-1 copy for an exchange
    given: Optional[int] = None  # edge handed to the partner


@dataclass
class UndirectedResult:
    coloring: dict[int, Color]
    ell: int
    eps: float
    girth_split: Optional[SplitGraph] = None
    final_split: Optional[SplitGraph] = None
    buckets: Optional[BucketSet] = None
    blocks: list[VotingBlock] = field(default_factory=list)
    hso: Optional[HsoInstance] = None
    assignment: Optional[HsoAssignment] = None
    operations: list[Operation] = field(default_factory=list)
    girth: Optional[GirthReport] = None
    fallback_vertices: list[int] = field(default_factory=list)
    edge_map: list[int] = field(default_factory=list)


def euler_split(g: Graph, eids: Optional[Sequence[int]] = None) -> dict[int, Color]:
    """Alternate colors along Euler circuits: |red - blue| <= 1 at odd and <= 2 at even vertices."""
    eids = list(g.edge_ids) if eids is None else list(eids)
    out: dict[int, Color] = {}
    for circuit in euler_circuits((e, *g.endpoints(e)) for e in eids):
        for pos, key in enumerate(circuit):
            if isinstance(key, int):
                out[key] = Color.RED if pos % 2 == 0 else Color.BLUE
    return out


def _give_edge(comp: Component, p: int, toward_start: bool) -> int:
    L = len(comp.nodes)
    if toward_start:
        return comp.edges[(p - 1) % L] if comp.is_cycle else comp.edges[p - 1]
    return comp.edges[p]


def plan_operations(s: SplitGraph, index: ComponentIndex, blocks: Sequence[VotingBlock],
                    assignment: HsoAssignment, buckets: BucketSet) -> list[Operation]:
    """One operation per block, read off the current structure of ``s``."""
    ones = {}
    for i in range(s.num_nodes):
        if s.degree(i) == 1:
            ones[buckets.of_node[i]] = i
    choice: dict[int, BucketId] = {}
    for bi, he in assignment.phi().items():
        met = {buckets.of_node[n] for n in blocks[bi].nodes} & set(he)
        if not met:
            raise ValueError(f"block {bi} does not meet its hyperedge {he}")
        choice[bi] = min(met)
    chosen_buckets = set(choice.values())
    on_comp: dict[int, list[int]] = {}
    for bi, b in enumerate(blocks):
        on_comp.setdefault(b.component, []).append(bi)
    for ci in on_comp:
        on_comp[ci].sort(key=lambda bi: index.where[blocks[bi].nodes[0]][1])

    ops = []
    for bi in sorted(choice):
        bucket = choice[bi]
        nodes_in = [n for n in blocks[bi].nodes if buckets.of_node[n] == bucket]
        t = ones.get(bucket)
        deg2 = [n for n in nodes_in if s.degree(n) == 2]
        if t is None:
            ops.append(Operation("chop", bi, bucket, min(deg2, key=s.nodes.__getitem__)))
            continue
        if not deg2:
            ops.append(Operation("none", bi, bucket, t))
            continue
        w = min(deg2, key=s.nodes.__getitem__)
        ci, p = index.where[w]
        comp = index.comps[ci]
        tc, tp = index.where[t]
        if tc == ci:
            # t ends this very path: hand over the edge pointing away from t
            toward_start = tp != 0
        elif comp.is_cycle:
            toward_start = True
        else:
            row = on_comp[ci]
            k = row.index(bi)
            if len(row) == 1:
                end_bucket = buckets.of_node[comp.nodes[-1]]
                toward_start = end_bucket not in chosen_buckets
            elif k == len(row) - 1:
                toward_start = False
            else:
                toward_start = True
        ops.append(Operation("exchange", bi, bucket, w, t, _give_edge(comp, p, toward_start)))
    return ops


def apply_operations(s: SplitGraph, ops: Sequence[Operation]) -> SplitGraph:
    work = s._clone()
    for op in ops:
        if op.kind == "chop":
            work._halve(op.node)
        elif op.kind == "exchange":
            taken = work.inc[op.partner][0]
            work._move_edge(op.given, op.node, op.partner)
            work._move_edge(taken, op.partner, op.node)
    return work


def color_components(s: SplitGraph, exchange_nodes: Mapping[int, int]) -> dict[int, Color]:
    """Alternate colors along every component of ``s``.

    Paths start RED at their canonical first node.  An odd cycle must give one
    node two equal colors; that node is its minimum-key exchange node, and the
    doubled color is chosen opposite to the color at its vertex's degree-1
    partner copy.  ``exchange_nodes`` maps exchange node -> partner copy.
    """
    out: dict[int, Color] = {}
    odd = []
    for comp in components_paths_cycles(s):
        if comp.is_cycle and len(comp.edges) % 2:
            odd.append(comp)
            continue
        for i, e in enumerate(comp.edges):
            out[e] = Color.RED if i % 2 == 0 else Color.BLUE
    for comp in odd:
        cands = [i for i in comp.nodes if i in exchange_nodes]
        if not cands:
            raise RuntimeError("odd cycle without an exchange node")
        w = min(cands, key=s.nodes.__getitem__)
        partner = exchange_nodes[w]
        other = out[s.inc[partner][0]]
        first = Color.BLUE if other == Color.RED else Color.RED
        L = len(comp.nodes)
        p = comp.nodes.index(w)
        # walk from w so that its two edges sit at even positions 0 and L-1
        seq_edges = [comp.edges[(p + k) % L] for k in range(L)]
        for k, e in enumerate(seq_edges):
            out[e] = first if k % 2 == 0 else Color(-first)
    return out


def run_undirected(g: Graph, eps: float, ell: Optional[int] = None) -> UndirectedResult:
    if not eps > 0:
        raise ValueError("epsilon must be positive")
    ell = ell or undirected_ell(eps)
    small = [c for c in connected_components(g) if len(c) < ell]
    small_set = {v for c in small for v in c}
    fallback_edges = [e for e, u, v in g.edges() if u in small_set]
    main_edges = [e for e, u, v in g.edges() if u not in small_set]
    coloring = euler_split(g, fallback_edges)
    res = UndirectedResult(coloring, ell, eps, fallback_vertices=sorted(small_set))
    if not main_edges:
        return res

    h, emap = g.edge_subgraph(main_edges)
    s0 = build_split_graph(h)
    s1, girth = increase_girth_report(s0, ell)
    buckets = make_buckets(s1, lambda v: undirected_x(h.degree(v), eps))
    index = ComponentIndex(s1)
    blocks = select_disjoint_blocks(s1, ell, index)
    count: dict[int, int] = {}
    for b in blocks:
        count[b.component] = count.get(b.component, 0) + 1
    merge = []
    for ci, comp in enumerate(index.comps):
        if not comp.is_cycle and count.get(ci, 0) < 2:
            merge.append((s1_bucket(buckets, comp.nodes[0]), s1_bucket(buckets, comp.nodes[-1])))
    hso = build_hso_instance(blocks, buckets, merge)
    assignment = solve_hso(hso)
    ops = plan_operations(s1, index, blocks, assignment, buckets)
    s2 = apply_operations(s1, ops)
    partners = {op.node: op.partner for op in ops if op.kind == "exchange"}
    local = color_components(s2, partners)
    for e_new, col in local.items():
        coloring[emap[e_new]] = col
    res.girth_split = s1
    res.final_split = s2
    res.buckets = buckets
    res.blocks = blocks
    res.hso = hso
    res.assignment = assignment
    res.operations = ops
    res.girth = girth
    res.edge_map = emap
    return res


def s1_bucket(buckets: BucketSet, node: int) -> BucketId:
    return buckets.of_node[node]


def undirected_split(g: Graph, eps: float) -> dict[int, Color]:
    """Red/blue coloring with |red - blue| <= eps*deg(v) + 1 (odd) or + 2 (even)."""
    return run_undirected(g, eps).coloring
