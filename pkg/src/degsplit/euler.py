"""Euler-tour orientations of multigraphs (loops allowed)."""

from __future__ import annotations

from typing import Hashable, Iterable

_PHANTOM = ("phantom",)


def euler_orient(edges: Iterable[tuple[Hashable, Hashable, Hashable]]) -> dict[Hashable, tuple[Hashable, Hashable]]:
    """Orient ``(key, a, b)`` edges so every vertex has |in - out| <= 1.

    Odd-degree vertices are paired through a phantom vertex, then each
    component is traversed with Hierholzer's walk; every edge is oriented in
    the direction it is walked.  Even-degree vertices end with in == out, odd
    ones with |in - out| == 1.  Returns key -> (tail, head).
    """
    edges = list(edges)
    adj: dict[Hashable, list[tuple[int, Hashable]]] = {}
    ends: list[tuple[Hashable, Hashable]] = []
    for idx, (_, a, b) in enumerate(edges):
        ends.append((a, b))
        adj.setdefault(a, []).append((idx, b))
        adj.setdefault(b, []).append((idx, a))
    odd = [v for v, lst in adj.items() if len(lst) % 2]
    for v in odd:
        idx = len(ends)
        ends.append((_PHANTOM, v))
        adj.setdefault(_PHANTOM, []).append((idx, v))
        adj[v].append((idx, _PHANTOM))
    used = bytearray(len(ends))
    ptr = {v: 0 for v in adj}
    oriented: list[tuple[Hashable, Hashable] | None] = [None] * len(ends)
    starts = ([_PHANTOM] if odd else []) + list(adj)
    for start in starts:
        stack = [start]
        while stack:
            x = stack[-1]
            lst = adj[x]
            p = ptr[x]
            while p < len(lst) and used[lst[p][0]]:
                p += 1
            ptr[x] = p
            if p == len(lst):
                stack.pop()
                continue
            idx, y = lst[p]
            used[idx] = 1
            oriented[idx] = (x, y)
            stack.append(y)
    return {edges[i][0]: oriented[i] for i in range(len(edges))}


def euler_circuits(edges: Iterable[tuple[Hashable, Hashable, Hashable]]) -> list[list[Hashable]]:
    """Closed walks covering every edge once, after pairing odd vertices through a phantom.

    Each walk is a list of edge keys in traversal order; phantom edges appear
    as ``("phantom", v)``.  The walk through the phantom (if any) starts and
    ends there, so every real vertex only ever sits in the middle of a walk.
    """
    edges = list(edges)
    keys: list[Hashable] = []
    adj: dict[Hashable, list[tuple[int, Hashable]]] = {}
    for k, a, b in edges:
        idx = len(keys)
        keys.append(k)
        adj.setdefault(a, []).append((idx, b))
        adj.setdefault(b, []).append((idx, a))
    odd = [v for v, lst in adj.items() if len(lst) % 2]
    for v in odd:
        idx = len(keys)
        keys.append(("phantom", v))
        adj.setdefault(_PHANTOM, []).append((idx, v))
        adj[v].append((idx, _PHANTOM))
    used = bytearray(len(keys))
    ptr = {v: 0 for v in adj}
    circuits = []
    starts = ([_PHANTOM] if odd else []) + list(adj)
    for start in starts:
        circuit: list[Hashable] = []
        stack: list[tuple[Hashable, int]] = [(start, -1)]
        while stack:
            x, via = stack[-1]
            lst = adj[x]
            p = ptr[x]
            while p < len(lst) and used[lst[p][0]]:
                p += 1
            ptr[x] = p
            if p == len(lst):
                stack.pop()
                if via >= 0:
                    circuit.append(keys[via])
                continue
            idx, y = lst[p]
            used[idx] = 1
            stack.append((y, idx))
        if circuit:
            circuit.reverse()
            circuits.append(circuit)
    return circuits
