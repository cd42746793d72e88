"""Voting blocks on split graphs and their disjoint selection.

A voting block is a contiguous run of a split-graph component that touches
at least ``ell`` distinct creators while its creators induce a subgraph of
``G`` of diameter at most ``ell``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .graph import Graph, weak_diameter
from .split import Component, SplitGraph, components_paths_cycles


@dataclass(frozen=True)
class VotingBlock:
    nodes: tuple[int, ...]
    component: int
    true_length: int

    def creators(self, s: SplitGraph) -> set[int]:
        return {s.nodes[i].creator for i in self.nodes}

    def weak_diameter(self, s: SplitGraph) -> float:
        return weak_diameter(s.graph, self.creators(s))


class ComponentIndex:
    """Components of a split graph plus node -> (component, position) lookup."""

    def __init__(self, s: SplitGraph, comps: Optional[list[Component]] = None):
        self.split = s
        self.comps = comps if comps is not None else components_paths_cycles(s)
        self.where: list[tuple[int, int]] = [(-1, -1)] * s.num_nodes
        self.lengths: list[int] = []
        for ci, c in enumerate(self.comps):
            for p, node in enumerate(c.nodes):
                self.where[node] = (ci, p)
            self.lengths.append(len({s.nodes[i].creator for i in c.nodes}))


def _grow(s: SplitGraph, seq: Sequence[int], p: int, ell: int, lo: int, hi: int,
          cyclic: bool, used: Optional[bytearray] = None) -> Optional[list[int]]:
    """Smallest window around ``seq[p]`` with ``ell`` distinct creators.

    The window grows one step forward, then one step back, alternately.  On a
    path it stays within positions ``lo..hi``; on a cycle it may wrap but never
    overlaps itself.  Returns positions in sequence order, or None if no window
    fits or (when ``used`` is given) the window would hit a used node.
    """
    L = len(seq)
    nodes = s.nodes
    counts = {nodes[seq[p]].creator: 1}
    distinct = 1
    left = right = 0
    while distinct < ell:
        grew = False
        for step in (1, -1):
            if cyclic:
                if left + right + 1 >= L:
                    break
                q = (p + right + 1) % L if step == 1 else (p - left - 1) % L
            else:
                q = p + right + 1 if step == 1 else p - left - 1
                if q < lo or q > hi:
                    continue
            node = seq[q]
            if used is not None and used[node]:
                return None
            if step == 1:
                right += 1
            else:
                left += 1
            grew = True
            c = nodes[node].creator
            k = counts.get(c, 0)
            counts[c] = k + 1
            if k == 0:
                distinct += 1
                if distinct >= ell:
                    break
        if not grew:
            return None
    if cyclic:
        return [(p + off) % L for off in range(-left, right + 1)]
    return list(range(p - left, p + right + 1))


def local_voting_block(s: SplitGraph, v: int, ell: int, index: Optional[ComponentIndex] = None) -> Optional[VotingBlock]:
    """Block around node ``v``, or None when v's component has fewer than ``ell`` creators."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    index = index or ComponentIndex(s)
    ci, p = index.where[v]
    if index.lengths[ci] < ell:
        return None
    comp = index.comps[ci]
    pos = _grow(s, comp.nodes, p, ell, 0, len(comp) - 1, comp.is_cycle)
    assert pos is not None
    return VotingBlock(tuple(comp.nodes[q] for q in pos), ci, ell)


def candidate_blocks(s: SplitGraph, ell: int, index: Optional[ComponentIndex] = None) -> list[VotingBlock]:
    """B(v) for every node v whose component is long enough, in (component, position) order."""
    index = index or ComponentIndex(s)
    out = []
    for ci, comp in enumerate(index.comps):
        if index.lengths[ci] < ell:
            continue
        for node in comp.nodes:
            blk = local_voting_block(s, node, ell, index)
            out.append(blk)
    return out


def block_intersection_graph(blocks: Sequence[VotingBlock]) -> Graph:
    """Block i becomes vertex i + 1; two blocks are adjacent when they share a node."""
    holders: dict[int, list[int]] = {}
    for i, b in enumerate(blocks):
        for node in b.nodes:
            holders.setdefault(node, []).append(i)
    pairs = set()
    for lst in holders.values():
        for a in range(len(lst)):
            for b in range(a + 1, len(lst)):
                pairs.add((lst[a] + 1, lst[b] + 1))
    return Graph(len(blocks), sorted(pairs))


@dataclass(frozen=True)
class RulingSet:
    vertices: list[int]
    alpha: int
    beta: int


def ruling_set(g: Graph, beta_hint: int = 1) -> RulingSet:
    """Greedy maximal independent set by ascending ID: a (2, 1)-ruling set."""
    if beta_hint < 1:
        raise ValueError("beta_hint must be >= 1")
    blocked = bytearray(g.n + 1)
    chosen = []
    for v in g.vertices:
        if blocked[v]:
            continue
        chosen.append(v)
        blocked[v] = 1
        for e in g.incident(v):
            blocked[g.other(e, v)] = 1
    return RulingSet(chosen, 2, 1)


def residual_components(s: SplitGraph, removed: Iterable[int]) -> list[list[int]]:
    """Node sets of the components of ``s`` after deleting ``removed`` nodes."""
    gone = bytearray(s.num_nodes)
    for i in removed:
        gone[i] = 1
    seen = bytearray(s.num_nodes)
    out = []
    for start in range(s.num_nodes):
        if gone[start] or seen[start]:
            continue
        seen[start] = 1
        comp = [start]
        stack = [start]
        while stack:
            x = stack.pop()
            for e in s.inc[x]:
                y = s.other(e, x)
                if not gone[y] and not seen[y]:
                    seen[y] = 1
                    comp.append(y)
                    stack.append(y)
        out.append(comp)
    return out


def _free_runs(n: int, used_pos: list[bool], cyclic: bool) -> list[list[int]]:
    """Maximal runs of unused positions, in order (wrapping on cycles)."""
    if not any(used_pos):
        return [list(range(n))]
    start = 0
    if cyclic:
        start = next(i for i in range(n) if used_pos[i])
    runs, cur = [], []
    for k in range(n):
        q = (start + k) % n
        if used_pos[q]:
            if cur:
                runs.append(cur)
            cur = []
        else:
            cur.append(q)
    if cur:
        runs.append(cur)
    return runs


def select_disjoint_blocks(s: SplitGraph, ell: int, index: Optional[ComponentIndex] = None) -> list[VotingBlock]:
    """Pairwise disjoint voting blocks leaving only residual pieces of weak diameter < ell.

    First a greedy maximal independent set of the candidate blocks B(v), in
    (component, position) order; this is exactly :func:`ruling_set` applied to
    the block intersection graph.  Then any residual piece whose weak
    diameter is still >= ell receives a further block, started at its
    minimum-key node.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    index = index or ComponentIndex(s)
    used = bytearray(s.num_nodes)
    chosen: list[VotingBlock] = []
    for ci, comp in enumerate(index.comps):
        if index.lengths[ci] < ell:
            continue
        seq = comp.nodes
        L = len(seq)
        for p in range(L):
            if used[seq[p]]:
                continue
            pos = _grow(s, seq, p, ell, 0, L - 1, comp.is_cycle, used)
            if pos is None:
                continue
            nodes = tuple(seq[q] for q in pos)
            for node in nodes:
                used[node] = 1
            chosen.append(VotingBlock(nodes, ci, ell))
        chosen.extend(complete_residual(s, ci, comp, ell, used))
    return chosen


def complete_residual(s: SplitGraph, ci: int, comp: Component, ell: int, used: bytearray) -> list[VotingBlock]:
    """Completion loop: add blocks to runs of unused nodes until every run has weak diameter < ell.

    Each offending run gets a block grown from its minimum-key node; ``used`` is updated in place.
    """
    seq = comp.nodes
    out: list[VotingBlock] = []
    work = _free_runs(len(seq), [bool(used[x]) for x in seq], comp.is_cycle)
    while work:
        run = work.pop()
        if len(run) <= ell:
            continue
        creators = {s.nodes[seq[q]].creator for q in run}
        if len(creators) <= ell or weak_diameter(s.graph, creators) < ell:
            continue
        local = [seq[q] for q in run]
        p = min(range(len(run)), key=lambda k: s.nodes[local[k]])
        pos = _grow(s, local, p, ell, 0, len(run) - 1, False)
        assert pos is not None
        nodes = tuple(local[k] for k in pos)
        for node in nodes:
            used[node] = 1
        out.append(VotingBlock(nodes, ci, ell))
        before, after = run[:pos[0]], run[pos[-1] + 1:]
        work.extend(r for r in (before, after) if r)
    return out
