"""Bound checkers that read only a graph and an output labeling.

They share no code with the algorithms.  Each returns a list of violations;
an empty list means the output meets its bound at every vertex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .graph import Graph


@dataclass(frozen=True)
class Violation:
    where: int
    value: float
    bound: float
    what: str


def _exact(eps) -> Fraction:
    return eps if isinstance(eps, Fraction) else Fraction(str(eps))


def split_bound(eps, deg: int) -> Fraction:
    """eps * deg + 1 for odd degree, + 2 for even degree."""
    return _exact(eps) * deg + (1 if deg % 2 else 2)


def check_orientation(g: Graph, o: Mapping[int, int], eps) -> list[Violation]:
    """``o[eid]`` is +1 when the edge runs from its first endpoint to its second, -1 otherwise."""
    net = [0] * (g.n + 1)
    bad = []
    for eid, u, v in g.edges():
        d = int(o.get(eid, 0))
        if d not in (1, -1):
            bad.append(Violation(eid, d, 0, "unoriented edge"))
            continue
        tail, head = (u, v) if d == 1 else (v, u)
        net[tail] -= 1
        net[head] += 1
    for v in g.vertices:
        b = split_bound(eps, g.degree(v))
        if abs(net[v]) > b:
            bad.append(Violation(v, abs(net[v]), float(b), "discrepancy"))
    return bad


def check_red_blue(g: Graph, c: Mapping[int, int], eps) -> list[Violation]:
    """``c[eid]`` is +1 (red) or -1 (blue)."""
    net = [0] * (g.n + 1)
    bad = []
    for eid, u, v in g.edges():
        x = int(c.get(eid, 0))
        if x not in (1, -1):
            bad.append(Violation(eid, x, 0, "uncolored edge"))
            continue
        net[u] += x
        net[v] += x
    for v in g.vertices:
        b = split_bound(eps, g.degree(v))
        if abs(net[v]) > b:
            bad.append(Violation(v, abs(net[v]), float(b), "color discrepancy"))
    return bad


def multiway_bound(eps, k: int, deg: int) -> Fraction:
    return (1 + _exact(eps)) * deg / (2 ** k) + 6


def check_partition(g: Graph, parts: Mapping[int, int], k: int, eps) -> list[Violation]:
    bad = []
    count: dict[tuple[int, int], int] = {}
    for eid, u, v in g.edges():
        p = parts.get(eid)
        if p is None or not 0 <= p < 2 ** k:
            bad.append(Violation(eid, -1 if p is None else p, 2 ** k, "bad part index"))
            continue
        count[(u, p)] = count.get((u, p), 0) + 1
        count[(v, p)] = count.get((v, p), 0) + 1
    for (v, p), c in count.items():
        b = multiway_bound(eps, k, g.degree(v))
        if c > b:
            bad.append(Violation(v, c, float(b), f"degree in part {p}"))
    return bad


def coloring_budget(eps, delta: int) -> int:
    return math.ceil((Fraction(3, 2) + _exact(eps)) * delta)


def check_edge_coloring(g: Graph, colors: Mapping[int, int], budget: int) -> list[Violation]:
    """Properness plus all colors within 1..budget."""
    bad = []
    for eid in g.edge_ids:
        c = colors.get(eid)
        if c is None or not 1 <= c <= budget:
            bad.append(Violation(eid, -1 if c is None else c, budget, "color outside palette"))
    for v in g.vertices:
        seen: set[int] = set()
        for eid in g.incident(v):
            c = colors.get(eid)
            if c in seen:
                bad.append(Violation(v, c, budget, "repeated color"))
            seen.add(c)
    return bad


def check_in_out(g: Graph, o: Mapping[int, int], lower: Mapping[int, int]) -> list[Violation]:
    """Every vertex has at least ``lower[v]`` incoming and outgoing edges."""
    ins = [0] * (g.n + 1)
    outs = [0] * (g.n + 1)
    for eid, u, v in g.edges():
        tail, head = (u, v) if int(o[eid]) == 1 else (v, u)
        outs[tail] += 1
        ins[head] += 1
    return [Violation(v, min(ins[v], outs[v]), lower[v], "in/out below bound")
            for v in g.vertices if min(ins[v], outs[v]) < lower[v]]
