"""Enumeration of small connected closed combinatorial 1- and 2-manifolds.

Surfaces are grown from a root triangle ``(0, 1, 2)`` by repeatedly closing
the least open edge (an edge lying in exactly one triangle).  The third
vertex of the closing triangle is either an existing vertex or the next
unused one, so every surface appears in some labeling; isomorphic copies are
then removed.
"""
from __future__ import annotations

from typing import Iterator

from .complex import SimplicialComplex, find_isomorphism
from .fixtures import cycle


def closed_manifolds(n: int, max_vertices: int) -> list[SimplicialComplex]:
    """All connected closed combinatorial n-manifolds (n in {1, 2}) up to isomorphism."""
    if n == 1:
        return [cycle(k) for k in range(3, max_vertices + 1)]
    if n == 2:
        return closed_surfaces(max_vertices)
    raise ValueError(f"enumeration is only supported in dimensions 1 and 2, not {n}")


def _invariant(K: SimplicialComplex):
    return (K.f_vector, tuple(sorted(len(a) for a in K.adjacency.values())))


def closed_surfaces(max_vertices: int) -> list[SimplicialComplex]:
    found: dict = {}
    order = []
    for K in _labeled_surfaces(max_vertices):
        inv = _invariant(K)
        bucket = found.setdefault(inv, [])
        if any(find_isomorphism(K, other) is not None for other in bucket):
            continue
        bucket.append(K)
        order.append(K)
    order.sort(key=lambda K: (len(K.vertices), K.f_vector, sorted(K.facets)))
    return order


def _labeled_surfaces(max_vertices: int) -> Iterator[SimplicialComplex]:
    if max_vertices < 4:
        return
    tris: set = {(0, 1, 2)}
    edge_count: dict = {(0, 1): 1, (0, 2): 1, (1, 2): 1}
    # link of each vertex as an adjacency map on its neighbors
    links: dict = {0: {1: {2}, 2: {1}}, 1: {0: {2}, 2: {0}}, 2: {0: {1}, 1: {0}}}
    state = {"nv": 3}

    def link_ok(v) -> bool:
        L = links[v]
        if any(len(nb) > 2 for nb in L.values()):
            return False
        # a closed cycle in the link must be the whole link
        seen = set()
        comps = 0
        has_cycle = False
        for start in L:
            if start in seen:
                continue
            comps += 1
            stack, nodes, deg_sum = [start], 0, 0
            seen.add(start)
            while stack:
                u = stack.pop()
                nodes += 1
                deg_sum += len(L[u])
                for w in L[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if deg_sum // 2 == nodes:
                has_cycle = True
        return not (has_cycle and comps > 1)

    def add(t):
        tris.add(t)
        a, b, c = t
        for e in ((a, b), (a, c), (b, c)):
            edge_count[e] = edge_count.get(e, 0) + 1
        for v, (p, q) in ((a, (b, c)), (b, (a, c)), (c, (a, b))):
            L = links.setdefault(v, {})
            L.setdefault(p, set()).add(q)
            L.setdefault(q, set()).add(p)

    def remove(t):
        tris.discard(t)
        a, b, c = t
        for e in ((a, b), (a, c), (b, c)):
            edge_count[e] -= 1
            if edge_count[e] == 0:
                del edge_count[e]
        for v, (p, q) in ((a, (b, c)), (b, (a, c)), (c, (a, b))):
            L = links[v]
            L[p].discard(q)
            L[q].discard(p)
            if not L[p]:
                del L[p]
            if not L[q]:
                del L[q]
            if not L:
                del links[v]

    def recurse():
        open_edges = [e for e, c in edge_count.items() if c == 1]
        if not open_edges:
            if all(_is_cycle(links[v]) for v in links):
                yield SimplicialComplex(tris)
            return
        u, w = min(open_edges)
        nv = state["nv"]
        for x in range(min(nv + 1, max_vertices)):
            if x in (u, w):
                continue
            t = tuple(sorted((u, w, x)))
            if t in tris:
                continue
            if edge_count.get(tuple(sorted((u, x))), 0) >= 2 or edge_count.get(tuple(sorted((w, x))), 0) >= 2:
                continue
            add(t)
            if x == nv:
                state["nv"] = nv + 1
            if all(link_ok(v) for v in t):
                yield from recurse()
            state["nv"] = nv
            remove(t)

    yield from recurse()


def _is_cycle(L: dict) -> bool:
    if len(L) < 3 or any(len(nb) != 2 for nb in L.values()):
        return False
    start = next(iter(L))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in L[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(L)
