"""Branched manifolds given by combinatorial local projections, and immersions into them.

A chart is a combinatorial n-ball standing in for the cube.  A projection
maps its domain (a subcomplex of the branched complex) simplicially and
nondegenerately onto the chart; its sheets are subcomplexes of the domain
mapped isomorphically onto the chart.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping

from .complex import (
    ManifoldStatus,
    SimplicialComplex,
    SimplicialMap,
    boundary_complex,
    is_ball,
    is_combinatorial_manifold,
    is_sphere,
    simplex_link,
    simplex_star,
    star,
)

log = logging.getLogger(__name__)


class UndecidableError(ValueError):
    """Raised when a question falls outside the dimensions handled exactly."""


@dataclass(frozen=True)
class LocalProjection:
    domain: SimplicialComplex
    chart: SimplicialComplex
    vertex_map: Mapping
    sheets: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "sheets", tuple(self.sheets))

    @property
    def map(self) -> SimplicialMap:
        return SimplicialMap(self.domain, self.chart, self.vertex_map)

    def __call__(self, v):
        return self.vertex_map[v]


@dataclass(frozen=True)
class BranchedManifold:
    complex: SimplicialComplex
    projections: tuple
    dim: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "projections", tuple(self.projections))
        if self.dim is None:
            object.__setattr__(self, "dim", self.complex.dim)

    @classmethod
    def from_manifold(cls, M: SimplicialComplex) -> "BranchedManifold":
        """A manifold as a branched manifold: one identity chart per vertex star."""
        projections = []
        for v in M.vertices:
            S = star(M, v)
            projections.append(LocalProjection(S, S, {u: u for u in S.vertices}, (S,)))
        return cls(M, tuple(projections), M.dim)


@dataclass(frozen=True)
class Violation:
    kind: str
    projection: int | None
    detail: str

    def __str__(self) -> str:
        where = "" if self.projection is None else f" (projection {self.projection})"
        return f"{self.kind}{where}: {self.detail}"


@dataclass
class BranchedReport:
    violations: list = field(default_factory=list)
    unknowns: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set:
        return {v.kind for v in self.violations}


def validate_branched(W: BranchedManifold) -> BranchedReport:
    """Check covering, chart, sheet and compatibility conditions.

    Chart ballness is exact up to dimension 2; an undecided 3-ball check is
    listed under ``unknowns`` rather than as a violation.
    """
    rep = BranchedReport()
    K = W.complex
    bad = rep.violations.append

    for x in K.vertices:
        S = star(K, x).simplices
        if not any(S <= p.domain.simplices for p in W.projections):
            bad(Violation("covering", None, f"no projection domain contains the star of {x!r}"))

    for i, p in enumerate(W.projections):
        if not p.domain.issubcomplex(K):
            bad(Violation("domain-not-subcomplex", i, "domain is not a subcomplex"))
            continue
        f = p.map
        if not f.is_total():
            missing = [v for v in p.domain.vertices if v not in p.vertex_map]
            bad(Violation("map-not-total", i, f"no image for {missing[:3]!r}"))
            continue
        if not f.is_simplicial():
            bad(Violation("map-not-simplicial", i, "some domain simplex has no image simplex in the chart"))
            continue
        if not f.is_nondegenerate():
            bad(Violation("map-degenerate", i, "some domain simplex collapses"))
        ball = is_ball(p.chart, W.dim)
        if ball is None:
            rep.unknowns.append(f"chart of projection {i} could not be recognized as a ball")
        elif not ball:
            bad(Violation("chart-not-ball", i, f"chart is not a combinatorial {W.dim}-ball"))
        covered: set = set()
        for k, D in enumerate(p.sheets):
            if not D.issubcomplex(p.domain):
                bad(Violation("sheet-not-in-domain", i, f"sheet {k} leaves the domain"))
                continue
            if not f.restrict(D).is_isomorphism():
                bad(Violation("sheet-not-isomorphic", i, f"sheet {k} does not map isomorphically onto the chart"))
            covered |= D.simplices
        if covered != p.domain.simplices:
            bad(Violation("sheet-union", i, f"sheets miss {len(p.domain.simplices - covered)} domain simplices"))

    _check_compatibility(W, rep)
    return rep


def _check_compatibility(W: BranchedManifold, rep: BranchedReport) -> None:
    P = W.projections
    for i in range(len(P)):
        for j in range(i + 1, len(P)):
            common = sorted(set(P[i].domain.vertices) & set(P[j].domain.vertices))
            if len(common) < 2:
                continue
            mi, mj = P[i].vertex_map, P[j].vertex_map
            for a in range(len(common)):
                for b in range(a + 1, len(common)):
                    p, q = common[a], common[b]
                    if p not in mi or q not in mi or p not in mj or q not in mj:
                        continue
                    if (mi[p] == mi[q]) != (mj[p] == mj[q]):
                        rep.violations.append(Violation(
                            "compatibility", i,
                            f"projections {i} and {j} disagree on identifying {p!r} and {q!r}"))
                        return


def branch_set(W: BranchedManifold) -> SimplicialComplex:
    """Simplices whose points have no manifold neighborhood (link not a sphere or ball)."""
    n = W.dim
    if n >= 4:
        raise UndecidableError(f"branch set is only decided up to dimension 3, not {n}")
    K = W.complex
    bad = []
    for s in K.simplices:
        k = n - len(s)
        L = simplex_link(K, s)
        if is_sphere(L, k) or is_ball(L, k):
            continue
        bad.append(s)
    return SimplicialComplex(bad)


def _star_in_domain(K: SimplicialComplex, s, p: LocalProjection) -> bool:
    return simplex_star(K, s).simplices <= p.domain.simplices


def branched_boundary(W: BranchedManifold) -> SimplicialComplex:
    """Simplices sent into the chart boundary by a projection whose domain
    contains their closed star."""
    K = W.complex
    bds = []
    for p in W.projections:
        if is_combinatorial_manifold(p.chart, W.dim) is ManifoldStatus.NOT_MANIFOLD:
            bds.append(frozenset())
        else:
            bds.append(boundary_complex(p.chart).simplices)
    found = []
    for s in K.simplices:
        for p, bd in zip(W.projections, bds):
            if all(v in p.vertex_map for v in s) and _star_in_domain(K, s, p):
                if tuple(sorted({p.vertex_map[v] for v in s})) in bd:
                    found.append(s)
                    break
    return SimplicialComplex(found)


def is_nice(W: BranchedManifold) -> bool:
    """Branch set is a subcomplex and every simplex has a projection whose
    domain contains its closed star."""
    B = branch_set(W)
    assert B.issubcomplex(W.complex)
    K = W.complex
    return all(any(_star_in_domain(K, s, p) for p in W.projections) for s in K.simplices)


# -- immersions -------------------------------------------------------------------

@dataclass(frozen=True)
class Immersion:
    map: SimplicialMap
    witnesses: Mapping = field(default_factory=dict)

    @property
    def vertex_map(self) -> Mapping:
        return self.map.vertex_map


def immersion_violation(M: SimplicialComplex, W: BranchedManifold, f: SimplicialMap):
    """``(None, witnesses)`` if ``f`` is a proper immersion, else ``(reason, None)``."""
    if not f.is_total():
        return "map is not defined on every vertex", None
    if not f.is_simplicial():
        return "map is not simplicial", None
    if not f.is_nondegenerate():
        return "map is degenerate", None
    P = W.projections
    domains = [p.domain.simplices for p in P]
    dverts = [set(p.domain.vertices) for p in P]
    witnesses = {}
    for x in M.vertices:
        S = star(M, x)
        img = {f.image_simplex(s) for s in S.simplices}
        for i, p in enumerate(P):
            if img <= domains[i] and len({p.vertex_map[f(v)] for v in S.vertices}) == len(S.vertices):
                witnesses[x] = i
                break
        else:
            return f"no projection is injective on the image of the star of {x!r}", None
        for j, p in enumerate(P):
            if f(x) not in dverts[j]:
                continue
            vs = {v for s in S.simplices if f.image_simplex(s) in domains[j] for v in s}
            if len({p.vertex_map[f(v)] for v in vs}) != len(vs):
                return f"projection {j} is not injective near {x!r}", None
    try:
        bdM = boundary_complex(M).simplices
    except ValueError:
        return "source is not a combinatorial manifold", None
    bdW = branched_boundary(W).simplices
    pulled = {s for s in M.simplices if f.image_simplex(s) in bdW}
    if pulled != set(bdM):
        return "boundary does not pull back to boundary", None
    return None, witnesses


def is_immersion(M: SimplicialComplex, W: BranchedManifold, f: SimplicialMap) -> Immersion | None:
    reason, witnesses = immersion_violation(M, W, f)
    if reason is not None:
        log.debug("not an immersion: %s", reason)
        return None
    return Immersion(f, witnesses)


def _search_order(M: SimplicialComplex) -> tuple[list, dict]:
    order, parent = [], {}
    for v in M.vertices:
        if v in parent:
            continue
        parent[v] = None
        order.append(v)
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in M.adjacency[u]:
                if w not in parent:
                    parent[w] = u
                    order.append(w)
                    queue.append(w)
    return order, parent


def find_immersion(M: SimplicialComplex, W: BranchedManifold) -> Immersion | None:
    """First proper immersion ``M -> W`` in search order, or ``None``.

    Vertices of ``M`` are assigned breadth first; each new vertex goes to a
    neighbor of its parent's image.  Partial assignments are pruned when a
    mapped simplex is missing or degenerate, or when some vertex star can no
    longer fit injectively into a single projection domain.
    """
    if M.dim != W.dim or not M.vertices:
        return None
    K = W.complex
    if not K.vertices:
        return None
    Ksimp = K.simplices
    P = W.projections
    domains = [p.domain.simplices for p in P]
    maps = [p.vertex_map for p in P]
    order, parent = _search_order(M)
    stars = {x: star(M, x).simplices for x in M.vertices}
    mapping: dict = {}

    def local_ok(x) -> bool:
        for s in M.simplices_containing(x):
            if all(u in mapping for u in s):
                img = tuple(sorted({mapping[u] for u in s}))
                if len(img) != len(s) or img not in Ksimp:
                    return False
        return True

    def star_ok(x) -> bool:
        done = [s for s in stars[x] if all(u in mapping for u in s)]
        imgs = {tuple(sorted(mapping[u] for u in s)) for s in done}
        verts = {u for s in done for u in s}
        for dom, pm in zip(domains, maps):
            if imgs <= dom and len({pm[mapping[u]] for u in verts}) == len(verts):
                return True
        return False

    def extend(i):
        if i == len(order):
            return is_immersion(M, W, SimplicialMap(M, K, dict(mapping)))
        x = order[i]
        p = parent[x]
        cands = K.vertices if p is None else K.adjacency[mapping[p]]
        for y in cands:
            mapping[x] = y
            if local_ok(x) and all(star_ok(z) for z in (x, *M.adjacency[x]) if z in mapping):
                found = extend(i + 1)
                if found is not None:
                    return found
            del mapping[x]
        return None

    return extend(0)
