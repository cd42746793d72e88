"""Hypergraph sinkless orientation between voting blocks and buckets.

Vertices are block indices; hyperedges are keyed by tuples of bucket IDs
(a single bucket, or two buckets merged into one hyperedge).  The solver
matches every block to a distinct incident hyperedge.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from .split import BucketId, BucketSet
from .voting import VotingBlock

HyperedgeId = tuple[BucketId, ...]


class HsoInfeasible(RuntimeError):
    """No vertex-saturating assignment exists."""


@dataclass(frozen=True)
class HsoInstance:
    vertices: tuple[int, ...]
    hyperedges: dict[Hashable, frozenset[int]]

    def __post_init__(self):
        vs = set(self.vertices)
        for h, inc in self.hyperedges.items():
            if not inc <= vs:
                raise ValueError(f"hyperedge {h} touches unknown vertices {sorted(inc - vs)}")

    def active(self) -> dict[Hashable, frozenset[int]]:
        """Hyperedges with non-empty incidence."""
        return {h: inc for h, inc in self.hyperedges.items() if inc}

    def incident(self) -> dict[int, list[Hashable]]:
        out: dict[int, list[Hashable]] = {v: [] for v in self.vertices}
        for h, inc in self.hyperedges.items():
            for v in inc:
                out[v].append(h)
        return out

    @property
    def rank(self) -> int:
        return max((len(inc) for inc in self.hyperedges.values()), default=0)

    @property
    def min_degree(self) -> int:
        return min((len(x) for x in self.incident().values()), default=0)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "hyperedges": [{"id": _jsonable(h), "incident": sorted(inc)}
                           for h, inc in sorted(self.hyperedges.items(), key=lambda kv: repr(kv[0]))],
        }


def _jsonable(h):
    if isinstance(h, tuple):
        return [_jsonable(x) for x in h]
    return h


@dataclass(frozen=True)
class HsoAssignment:
    owner: dict[Hashable, int]

    def owned(self) -> dict[int, list[Hashable]]:
        out: dict[int, list[Hashable]] = {}
        for h, v in self.owner.items():
            out.setdefault(v, []).append(h)
        return out

    def phi(self) -> dict[int, Hashable]:
        """One hyperedge per owning vertex: the minimum owned ID."""
        return {v: min(hs) for v, hs in self.owned().items()}


def build_hso_instance(blocks: Sequence[VotingBlock], buckets: BucketSet,
                       merge: Iterable[tuple[BucketId, BucketId]] = ()) -> HsoInstance:
    """One hyperedge per bucket (or per merged bucket pair) incident to the blocks meeting it.

    Hyperedge IDs are sorted tuples of bucket IDs.  Buckets touched by no block
    stay in the instance with empty incidence.
    """
    seen: dict[int, int] = {}
    for bi, b in enumerate(blocks):
        for node in b.nodes:
            if node in seen:
                raise ValueError(f"blocks {seen[node]} and {bi} overlap at node {node}")
            seen[node] = bi
    group: dict[BucketId, HyperedgeId] = {bid: (bid,) for bid in buckets.buckets}
    for a, b in merge:
        if a == b:
            continue
        ga, gb = group[a], group[b]
        if ga == gb:
            continue
        joined = tuple(sorted(set(ga) | set(gb)))
        for bid in joined:
            group[bid] = joined
    inc: dict[HyperedgeId, set[int]] = {h: set() for h in set(group.values())}
    for node, bi in seen.items():
        bid = buckets.of_node.get(node)
        if bid is not None:
            inc[group[bid]].add(bi)
    return HsoInstance(tuple(range(len(blocks))), {h: frozenset(v) for h, v in inc.items()})


def check_rank_degree(h: HsoInstance) -> tuple[int, int, bool]:
    """(rank, minimum degree, degree >= 2 * rank), ignoring empty hyperedges."""
    r = h.rank
    delta = h.min_degree
    return r, delta, delta >= 2 * r


def _hopcroft_karp(left: Sequence[int], adj: Mapping[int, Sequence[int]]) -> dict[int, int]:
    """Maximum matching from ``left`` into right-side keys; returns left -> right."""
    INF = float("inf")
    match_l: dict[int, Optional[int]] = {u: None for u in left}
    match_r: dict[int, int] = {}
    while True:
        dist: dict[int, float] = {}
        queue = deque()
        for u in left:
            if match_l[u] is None:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = INF
        found = False
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                x = match_r.get(w)
                if x is None:
                    found = True
                elif dist[x] == INF:
                    dist[x] = dist[u] + 1
                    queue.append(x)
        if not found:
            break
        ptr = {u: 0 for u in left}
        for root in left:
            if match_l[root] is not None:
                continue
            # iterative DFS along the layered graph
            stack = [root]
            path_w: list[int] = []
            while stack:
                u = stack[-1]
                nbrs = adj[u]
                advanced = False
                while ptr[u] < len(nbrs):
                    w = nbrs[ptr[u]]
                    ptr[u] += 1
                    x = match_r.get(w)
                    if x is None:
                        path_w.append(w)
                        for uu, ww in zip(stack, path_w):
                            match_l[uu] = ww
                            match_r[ww] = uu
                        stack = []
                        advanced = True
                        break
                    if dist.get(x) == dist[u] + 1:
                        path_w.append(w)
                        stack.append(x)
                        advanced = True
                        break
                if not advanced:
                    dist[u] = INF
                    stack.pop()
                    if path_w:
                        path_w.pop()
    return {u: w for u, w in match_l.items() if w is not None}


def _ordered(keys) -> list:
    try:
        return sorted(keys)
    except TypeError:
        return sorted(keys, key=repr)


def solve_hso(h: HsoInstance) -> HsoAssignment:
    """Give every vertex its own incident hyperedge via maximum bipartite matching."""
    keys = _ordered(h.active())
    idx = {k: i for i, k in enumerate(keys)}
    adj: dict[int, list[int]] = {v: [] for v in h.vertices}
    for k in keys:
        for v in h.hyperedges[k]:
            adj[v].append(idx[k])
    for v in adj:
        adj[v].sort()
    match = _hopcroft_karp(list(h.vertices), adj)
    if len(match) < len(h.vertices):
        missing = sorted(set(h.vertices) - set(match))
        raise HsoInfeasible(f"{len(missing)} vertices cannot own a hyperedge, e.g. {missing[:5]}")
    return HsoAssignment({keys[w]: v for v, w in match.items()})


def validate_hso(h: HsoInstance, a: HsoAssignment) -> bool:
    """Every vertex owns a hyperedge and every owner is incident to what it owns."""
    owners = set()
    for he, v in a.owner.items():
        if he not in h.hyperedges or v not in h.hyperedges[he]:
            return False
        owners.add(v)
    return owners >= set(h.vertices)
