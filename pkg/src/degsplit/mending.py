"""Partial orientations and the layered instance that defeats short mending radii.

Signs follow vertex IDs: ``+1`` orients an edge from its smaller-ID endpoint
to the larger, ``-1`` the reverse, ``0`` leaves it unoriented.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .graph import Graph


class InfeasibleParameters(ValueError):
    pass


class SearchBoundExceeded(RuntimeError):
    pass


def _frac(eps) -> Fraction:
    return eps if isinstance(eps, Fraction) else Fraction(str(eps))


def quotas(eps, delta: int) -> tuple[int, int]:
    """(down quota (1-eps)Delta/2, up quota (1+eps)Delta/2); both must be integers."""
    e = _frac(eps)
    down = (1 - e) * delta / 2
    up = (1 + e) * delta / 2
    if down.denominator != 1 or up.denominator != 1:
        raise InfeasibleParameters(f"(1 -/+ eps) * Delta / 2 must be integers for eps={e}, Delta={delta}")
    return int(down), int(up)


def tail_head(g: Graph, eid: int, sign: int) -> tuple[int, int]:
    u, v = g.endpoints(eid)
    lo, hi = (u, v) if u < v else (v, u)
    return (lo, hi) if sign > 0 else (hi, lo)


def _in_out(g: Graph, psi: Mapping[int, int]) -> tuple[list[int], list[int]]:
    ins = [0] * (g.n + 1)
    outs = [0] * (g.n + 1)
    for eid in g.edge_ids:
        s = psi.get(eid, 0)
        if s:
            t, h = tail_head(g, eid, s)
            outs[t] += 1
            ins[h] += 1
    return ins, outs


def bias(g: Graph, psi: Mapping[int, int], v: int) -> int:
    """Indegree minus outdegree of ``v`` over oriented edges."""
    b = 0
    for eid in g.incident(v):
        s = psi.get(eid, 0)
        if s:
            t, h = tail_head(g, eid, s)
            b += 1 if h == v else -1
    return b


def validate_partial(g: Graph, psi: Mapping[int, int], eps, delta: int) -> bool:
    """Every vertex has at most (1+eps)Delta/2 outgoing and at most as many incoming oriented edges."""
    _, up = quotas(eps, delta)
    ins, outs = _in_out(g, psi)
    return all(ins[v] <= up and outs[v] <= up for v in g.vertices)


@dataclass
class LayeredInstance:
    eps: Fraction
    delta: int
    D: int
    layers: list[list[int]]  # layers[i - 1] is V_i
    missing: list[int]  # missing[i - 1] is m_i
    special: list[int]  # special[i - 1] is w_i
    graph: Graph
    psi: dict[int, int]

    def layer_of(self) -> dict[int, int]:
        return {v: i + 1 for i, lay in enumerate(self.layers) for v in lay}

    @property
    def threshold(self) -> int:
        t = self.eps * self.delta
        return int(t) if t.denominator == 1 else math.floor(t)


def build_lower_bound_instance(eps, delta: int, D: int) -> LayeredInstance:
    """Clique V_1 plus D - 1 layers wired so every vertex of V_i has ``up`` edges
    to V_{i+1} and V_{i+2} and ``down`` edges to V_{i-1} and V_{i-2}.

    Layer sizes follow |V_{i+1}| = floor((up * |V_i| + m_{i-1}) / down); the
    single vertex w_i of V_i with the largest ID sends its last m_i up-edges to
    V_{i+2} instead of V_{i+1}.  Quotas are filled round-robin by ascending ID.
    Inter-layer edges point to the lower layer; clique edges stay unoriented.
    """
    e = _frac(eps)
    if D < 5:
        raise InfeasibleParameters("D must be >= 5")
    down, up = quotas(e, delta)
    if down < 1:
        raise InfeasibleParameters("(1 - eps) * Delta / 2 must be >= 1")
    nxt = 1
    first = list(range(nxt, nxt + down + 1))
    nxt += len(first)
    layers = [first]
    edges: list[tuple[int, int]] = [(a, b) for i, a in enumerate(first) for b in first[i + 1:]]
    clique = len(edges)
    missing: list[int] = []
    special: list[int] = []
    prev_missing = 0
    prev_special: Optional[int] = None
    for i in range(1, D):
        cur = layers[-1]
        size = (up * len(cur) + prev_missing) // down
        if size == 0:
            raise InfeasibleParameters(f"layer {i + 1} would be empty")
        m_i = up * len(cur) + prev_missing - down * size
        w_i = cur[-1]
        missing.append(m_i)
        special.append(w_i)
        new = list(range(nxt, nxt + size))
        nxt += size
        if prev_missing > size:
            raise InfeasibleParameters(f"layer {i + 1} too small for the deficit of layer {i - 1}")
        stubs = []
        for p in range(up):
            for v in cur:
                if v == w_i and p >= up - m_i:
                    continue
                stubs.append(v)
        pos = 0
        for j, x in enumerate(new):
            need = down
            if j < prev_missing:
                edges.append((x, prev_special))
                need -= 1
            chunk = stubs[pos:pos + need]
            pos += need
            if len(set(chunk)) != len(chunk):
                raise InfeasibleParameters(f"round-robin wiring creates parallel edges at layer {i + 1}")
            edges.extend((x, v) for v in chunk)
        assert pos == len(stubs)
        layers.append(new)
        prev_missing, prev_special = m_i, w_i
    g = Graph(nxt - 1, edges)
    psi = {}
    for eid, u, v in g.edges():
        if eid <= clique:
            psi[eid] = 0
        else:
            # u is the newer, higher-layer vertex: edge points down, from larger ID to smaller
            psi[eid] = -1 if u > v else 1
    return LayeredInstance(e, delta, D, layers, missing, special, g, psi)


def layer_bias_sum(inst: LayeredInstance, psi: Optional[Mapping[int, int]] = None, upto: Optional[int] = None) -> int:
    psi = inst.psi if psi is None else psi
    upto = inst.D - 2 if upto is None else upto
    ins, outs = _in_out(inst.graph, psi)
    return sum(ins[v] - outs[v] for lay in inst.layers[:upto] for v in lay)


def check_bias_certificate(inst: LayeredInstance, psi: Optional[Mapping[int, int]] = None) -> bool:
    """Sum of biases over V_1..V_{D-2} strictly exceeds eps * Delta * |V_1 u ... u V_{D-2}|."""
    total = layer_bias_sum(inst, psi)
    count = sum(len(lay) for lay in inst.layers[:inst.D - 2])
    return Fraction(total) > inst.eps * inst.delta * count


@dataclass
class MendResult:
    found: bool
    orientation: Optional[dict[int, int]]
    states: int
    free_edges: int

    @property
    def verdict(self) -> str:
        return "extension" if self.found else "impossible"


def brute_force_mend(inst: LayeredInstance, radius: int, max_states: int = 2 ** 22) -> MendResult:
    """Exhaustive search over orientations of the edges near V_1.

    Edges with both endpoints within ``radius`` of V_1 may take either
    direction (clique edges must become oriented); all others keep ``psi``.
    Looks for |bias(v)| <= eps * Delta at every vertex.  The depth-first
    search prunes a branch once some vertex can no longer reach the window,
    and raises if more than ``max_states`` partial assignments are visited.
    """
    g = inst.graph
    limit = inst.eps * inst.delta
    dist: dict[int, int] = {v: 0 for v in inst.layers[0]}
    queue = deque(inst.layers[0])
    while queue:
        x = queue.popleft()
        if dist[x] >= radius:
            continue
        for e in g.incident(x):
            y = g.other(e, x)
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    free = sorted((eid for eid, u, v in g.edges() if u in dist and v in dist),
                  key=lambda e: (max(dist[x] for x in g.endpoints(e)), min(g.endpoints(e)), e))
    free_set = set(free)
    fixed = {e: s for e, s in inst.psi.items() if e not in free_set}
    if any(s == 0 for s in fixed.values()):
        raise ValueError("unoriented edges outside the search radius")
    bal = [0] * (g.n + 1)
    for e, s in fixed.items():
        t, h = tail_head(g, e, s)
        bal[h] += 1
        bal[t] -= 1
    rest = [0] * (g.n + 1)
    for e in free:
        for x in g.endpoints(e):
            rest[x] += 1

    def ok(v: int) -> bool:
        return bal[v] - rest[v] <= limit and bal[v] + rest[v] >= -limit

    if not all(ok(v) for v in g.vertices):
        return MendResult(False, None, 0, len(free))

    states = 0
    choice = [0] * len(free)
    prefs = [inst.psi[e] if inst.psi[e] else 1 for e in free]
    k = 0
    tried = [0] * len(free)  # options tried at each depth
    while True:
        if k == len(free):
            out = dict(inst.psi)
            for e, s in zip(free, choice):
                out[e] = s
            return MendResult(True, out, states, len(free))
        if tried[k] == 2:
            tried[k] = 0
            k -= 1
            if k < 0:
                return MendResult(False, None, states, len(free))
            _undo(g, free[k], choice[k], bal, rest)
            continue
        sign = prefs[k] if tried[k] == 0 else -prefs[k]
        tried[k] += 1
        states += 1
        if states > max_states:
            raise SearchBoundExceeded(f"more than {max_states} states at radius {radius}")
        e = free[k]
        t, h = tail_head(g, e, sign)
        bal[h] += 1
        bal[t] -= 1
        rest[h] -= 1
        rest[t] -= 1
        if ok(t) and ok(h):
            choice[k] = sign
            k += 1
        else:
            _undo(g, e, sign, bal, rest)


def _undo(g: Graph, e: int, sign: int, bal: list[int], rest: list[int]) -> None:
    t, h = tail_head(g, e, sign)
    bal[h] -= 1
    bal[t] += 1
    rest[h] += 1
    rest[t] += 1


def implied_constant(inst: LayeredInstance) -> float:
    """c with D = c * log2(n / Delta) / eps for this instance's size n."""
    n = inst.graph.n
    ratio = n / inst.delta
    if ratio <= 1:
        return math.inf
    return inst.D * float(inst.eps) / math.log2(ratio)
