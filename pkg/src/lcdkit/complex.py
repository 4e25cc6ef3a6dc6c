"""Abstract simplicial complexes and the basic operations on them.

A complex is stored by its full, face-closed set of simplices.  Simplices
are sorted tuples of vertex ids; vertex ids may be any hashable values as
long as the vertices of one complex are mutually comparable (the ordering
drives every deterministic search in the package).
"""
from __future__ import annotations

import enum
import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping

Vertex = Hashable
Simplex = tuple

INFINITE = math.inf


def simplex(vertices: Iterable[Vertex]) -> Simplex:
    """Normalize an iterable of vertices into a sorted duplicate-free tuple."""
    s = tuple(sorted(set(vertices)))
    if not s:
        raise ValueError("a simplex needs at least one vertex")
    return s


def faces(s: Simplex, include_self: bool = True) -> Iterator[Simplex]:
    """All nonempty faces of ``s``."""
    top = len(s) if include_self else len(s) - 1
    for k in range(1, top + 1):
        yield from itertools.combinations(s, k)


def facets_of(s: Simplex) -> list[Simplex]:
    """Codimension-one faces of ``s``."""
    return [s[:i] + s[i + 1:] for i in range(len(s))]


class SimplicialComplex:
    """A finite abstract simplicial complex.

    ``SimplicialComplex([(0, 1, 2), (2, 3)])`` builds the closure of the given
    simplices.  Extra isolated vertices can be passed with ``vertices``.
    Instances are immutable and hashable.
    """

    __slots__ = ("_simplices", "__dict__")

    def __init__(self, simplices: Iterable[Iterable[Vertex]] = (),
                 vertices: Iterable[Vertex] = ()):
        closed: set[Simplex] = set()
        for s in simplices:
            s = simplex(s)
            if s in closed:
                continue
            closed.update(faces(s))
        closed.update((v,) for v in vertices)
        self._simplices = frozenset(closed)

    @classmethod
    def _from_closed(cls, closed: Iterable[Simplex]) -> "SimplicialComplex":
        obj = cls.__new__(cls)
        obj._simplices = frozenset(closed)
        return obj

    # -- basic structure -------------------------------------------------
    @property
    def simplices(self) -> frozenset:
        return self._simplices

    @cached_property
    def vertices(self) -> tuple:
        return tuple(sorted(s[0] for s in self._simplices if len(s) == 1))

    @cached_property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self._simplices), default=-1)

    @cached_property
    def _by_dim(self) -> dict[int, tuple]:
        out: dict[int, list] = {}
        for s in self._simplices:
            out.setdefault(len(s) - 1, []).append(s)
        return {k: tuple(sorted(v)) for k, v in out.items()}

    def simplices_of_dim(self, k: int) -> tuple:
        return self._by_dim.get(k, ())

    @property
    def edges(self) -> tuple:
        return self.simplices_of_dim(1)

    @property
    def top_simplices(self) -> tuple:
        """Simplices of maximal dimension."""
        return self.simplices_of_dim(self.dim)

    @cached_property
    def facets(self) -> tuple:
        """Maximal simplices, sorted."""
        cof = self._cofacet_count
        return tuple(sorted(s for s in self._simplices if cof.get(s, 0) == 0))

    @cached_property
    def _cofacet_count(self) -> dict:
        count: dict = {}
        for s in self._simplices:
            if len(s) > 1:
                for f in facets_of(s):
                    count[f] = count.get(f, 0) + 1
        return count

    def cofacets(self, s: Simplex) -> list[Simplex]:
        """Simplices having ``s`` as a codimension-one face."""
        s = simplex(s)
        return [t for t in self._containing[s[0]]
                if len(t) == len(s) + 1 and set(s) <= set(t)]

    @cached_property
    def _containing(self) -> dict:
        out: dict = {v: [] for v in self.vertices}
        for s in self._simplices:
            for v in s:
                out[v].append(s)
        return out

    def simplices_containing(self, v: Vertex) -> list[Simplex]:
        self._require(v)
        return self._containing[v]

    @cached_property
    def adjacency(self) -> dict:
        adj: dict = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return {v: tuple(sorted(n)) for v, n in adj.items()}

    def neighbors(self, v: Vertex) -> tuple:
        self._require(v)
        return self.adjacency[v]

    @cached_property
    def f_vector(self) -> tuple:
        return tuple(len(self.simplices_of_dim(k)) for k in range(self.dim + 1))

    @cached_property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.f_vector))

    def is_pure(self) -> bool:
        return all(len(s) - 1 == self.dim for s in self.facets)

    @cached_property
    def components(self) -> tuple:
        """Vertex sets of the connected components, in vertex order."""
        seen: set = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            comp = set(distances_from(self, v))
            seen |= comp
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def is_connected(self) -> bool:
        return len(self.components) <= 1

    # -- derived complexes -----------------------------------------------
    def induced(self, vertices: Iterable[Vertex]) -> "SimplicialComplex":
        """Full subcomplex spanned by ``vertices``."""
        vs = set(vertices)
        return SimplicialComplex._from_closed(
            s for s in self._simplices if vs.issuperset(s))

    def subcomplex(self, simplices: Iterable[Iterable[Vertex]]) -> "SimplicialComplex":
        """Closure of ``simplices``, which must all belong to this complex."""
        sub = SimplicialComplex(simplices)
        if not sub.simplices <= self._simplices:
            raise ValueError("not a subcomplex")
        return sub

    def relabel(self, mapping: Mapping) -> "SimplicialComplex":
        """Rename vertices through an injective ``mapping``."""
        out = SimplicialComplex._from_closed(
            tuple(sorted(mapping[v] for v in s)) for s in self._simplices)
        if len(out.simplices) != len(self._simplices) or len(set(mapping[v] for v in self.vertices)) != len(self.vertices):
            raise ValueError("relabeling is not injective on vertices")
        return out

    def union(self, other: "SimplicialComplex") -> "SimplicialComplex":
        return SimplicialComplex._from_closed(self._simplices | other.simplices)

    def intersection(self, other: "SimplicialComplex") -> "SimplicialComplex":
        return SimplicialComplex._from_closed(self._simplices & other.simplices)

    def issubcomplex(self, other: "SimplicialComplex") -> bool:
        return self._simplices <= other.simplices

    # -- dunder ----------------------------------------------------------
    def __contains__(self, s) -> bool:
        # tuples are read as simplices; use ``(v,) in K.simplices`` for tuple-valued vertex ids
        if isinstance(s, tuple):
            return simplex(s) in self._simplices
        return (s,) in self._simplices

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self._simplices == other._simplices

    def __hash__(self) -> int:
        return hash(self._simplices)

    def __len__(self) -> int:
        return len(self._simplices)

    def __repr__(self) -> str:
        return f"SimplicialComplex(f={list(self.f_vector)}, facets={list(self.facets)[:6]}{'...' if len(self.facets) > 6 else ''})"

    def _require(self, v: Vertex) -> None:
        if (v,) not in self._simplices:
            raise KeyError(f"unknown vertex {v!r}")


def disjoint_union(complexes: Iterable[SimplicialComplex]) -> SimplicialComplex:
    """Disjoint union; vertex ``v`` of the i-th complex becomes ``(i, v)``."""
    return SimplicialComplex._from_closed(
        tuple((i, v) for v in s)
        for i, K in enumerate(complexes) for s in K.simplices)


def fresh_vertices(existing: Iterable[Vertex]) -> Iterator[Vertex]:
    """Yield vertex ids not in ``existing`` and comparable with them.

    Integer vertex sets continue after their maximum; string vertex sets get
    ``"n0", "n1", ...`` skipping collisions.
    """
    existing = set(existing)
    if all(isinstance(v, int) for v in existing):
        nxt = max(existing, default=-1) + 1
        while True:
            yield nxt
            nxt += 1
    if all(isinstance(v, str) for v in existing):
        for k in itertools.count():
            name = f"n{k}"
            if name not in existing:
                yield name
        return
    raise TypeError("cannot invent fresh vertex ids for mixed vertex types")


# -- metric and neighborhoods ---------------------------------------------

def degree(K: SimplicialComplex, v: Vertex) -> int:
    """Number of edges incident to ``v``."""
    return len(K.neighbors(v))


def distances_from(K: SimplicialComplex, v: Vertex, limit: float = INFINITE) -> dict:
    """Breadth-first edge distances from ``v`` up to ``limit``."""
    K._require(v)
    dist = {v: 0}
    queue = deque([v])
    adj = K.adjacency
    while queue:
        u = queue.popleft()
        if dist[u] >= limit:
            continue
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def simplicial_distance(K: SimplicialComplex, u: Vertex, v: Vertex):
    """Length of a shortest edge path, or ``math.inf`` if none exists."""
    K._require(v)
    return distances_from(K, u).get(v, INFINITE)


def eccentricity(K: SimplicialComplex, v: Vertex):
    dist = distances_from(K, v)
    if len(dist) < len(K.vertices):
        return INFINITE
    return max(dist.values())


def diameter(K: SimplicialComplex):
    return max((eccentricity(K, v) for v in K.vertices), default=0)


def neighborhood(K: SimplicialComplex, v: Vertex, r: int) -> SimplicialComplex:
    """The r-neighborhood N(K, v, r).

    All simplices whose vertices are all within distance ``r`` of ``v``;
    this is the full subcomplex on the radius-``r`` ball.
    """
    return K.induced(distances_from(K, v, r))


def star(K: SimplicialComplex, v: Vertex) -> SimplicialComplex:
    """Closed star: every simplex containing ``v``, with its faces."""
    return SimplicialComplex._from_closed(
        f for s in K.simplices_containing(v) for f in faces(s))


def simplex_star(K: SimplicialComplex, s: Simplex) -> SimplicialComplex:
    """Closed star of a simplex (all simplices containing ``s``)."""
    s = simplex(s)
    if s not in K.simplices:
        raise KeyError(f"unknown simplex {s!r}")
    sset = set(s)
    return SimplicialComplex._from_closed(
        f for t in K.simplices_containing(s[0]) if sset <= set(t) for f in faces(t))


def link(K: SimplicialComplex, v: Vertex) -> SimplicialComplex:
    """Link of a vertex: faces not containing ``v`` whose join with it is in K."""
    return simplex_link(K, (v,))


def simplex_link(K: SimplicialComplex, s: Simplex) -> SimplicialComplex:
    """Link of a simplex given as a tuple of vertices."""
    s = simplex(s)
    if s not in K.simplices:
        raise KeyError(f"unknown simplex {s!r}")
    sset = set(s)
    out = set()
    for t in K.simplices_containing(s[0]):
        if sset <= set(t) and len(t) > len(s):
            out.add(tuple(x for x in t if x not in sset))
    return SimplicialComplex._from_closed(out)


# -- manifold recognition ---------------------------------------------------

class ManifoldStatus(enum.Enum):
    CLOSED = "closed-manifold"
    BOUNDARY = "manifold-with-boundary"
    NOT_MANIFOLD = "not-manifold"
    UNKNOWN = "unknown"

    @property
    def is_manifold(self) -> bool:
        return self in (ManifoldStatus.CLOSED, ManifoldStatus.BOUNDARY)


def is_combinatorial_manifold(K: SimplicialComplex, n: int | None = None) -> ManifoldStatus:
    """Decide whether ``K`` is a combinatorial n-manifold via vertex links.

    Exact for n <= 3 (links are recognized as spheres or balls of dimension
    at most 2); returns ``UNKNOWN`` for n >= 4.
    """
    if n is None:
        n = K.dim
    if K.dim < 0 or K.dim != n or not K.is_pure():
        return ManifoldStatus.NOT_MANIFOLD
    if n == 0:
        return ManifoldStatus.CLOSED
    if n >= 4:
        return ManifoldStatus.UNKNOWN
    boundary = unknown = False
    for v in K.vertices:
        L = link(K, v)
        s = is_sphere(L, n - 1)
        if s:
            continue
        b = is_ball(L, n - 1)
        if b:
            boundary = True
        elif s is None or b is None:
            unknown = True
        else:
            return ManifoldStatus.NOT_MANIFOLD
    if unknown:
        return ManifoldStatus.UNKNOWN
    return ManifoldStatus.BOUNDARY if boundary else ManifoldStatus.CLOSED


def is_sphere(K: SimplicialComplex, k: int) -> bool | None:
    """Is ``K`` a combinatorial k-sphere?  ``None`` when k >= 3."""
    if k == -1:
        return len(K) == 0
    if K.dim != k or not K.is_pure():
        return False
    if k == 0:
        return len(K.vertices) == 2
    if not K.is_connected():
        return False
    if k == 1:
        return all(len(n) == 2 for n in K.adjacency.values())
    if k == 2:
        return (K.euler_characteristic == 2
                and is_combinatorial_manifold(K, 2) is ManifoldStatus.CLOSED)
    return None


def is_ball(K: SimplicialComplex, k: int, budget: int = 20000) -> bool | None:
    """Is ``K`` a combinatorial k-ball?

    Exact for k <= 2.  For k == 3 the necessary conditions (manifold with
    boundary, connected, Euler characteristic 1, boundary a 2-sphere) are
    checked exactly and sufficiency comes from a budgeted collapse search;
    an inconclusive search yields ``None``.  ``None`` for k >= 4.
    """
    if k < 0:
        return False
    if K.dim != k or not K.is_pure() or not K.is_connected():
        return False
    if k == 0:
        return len(K.vertices) == 1
    if k == 1:
        degs = sorted(len(n) for n in K.adjacency.values())
        return degs.count(1) == 2 and all(d <= 2 for d in degs)
    if k >= 4:
        return None
    status = is_combinatorial_manifold(K, k)
    if status is not ManifoldStatus.BOUNDARY or K.euler_characteristic != 1:
        return False
    bd = boundary_complex(K)
    if not is_sphere(bd, k - 1):
        return False
    if k == 2:
        return True
    return True if is_collapsible(K, budget) else None


def is_collapsible(K: SimplicialComplex, budget: int = 20000) -> bool:
    """Greedy search for a sequence of elementary collapses down to a point.

    A few deterministic pass orders are tried; ``False`` only means none of
    them succeeded within ``budget`` elementary collapses.
    """
    if not K.is_connected():
        return False
    orders = (lambda s: s, lambda s: tuple(reversed(s)))
    for order in orders:
        for top_first in (True, False):
            if _greedy_collapse(K, budget, order, top_first):
                return True
    return False


def _greedy_collapse(K, budget, order, top_first) -> bool:
    alive = set(K.simplices)
    cof: dict = {s: set() for s in alive}
    for s in alive:
        if len(s) > 1:
            for f in facets_of(s):
                cof[f].add(s)
    steps = 0
    while len(alive) > 1:
        free = sorted((s for s in alive if len(cof[s]) == 1),
                      key=lambda s: ((-len(s) if top_first else len(s)), order(s)))
        if not free:
            return False
        tau = free[0]
        (sigma,) = cof[tau]
        for s in (sigma, tau):
            alive.discard(s)
            if len(s) > 1:
                for f in facets_of(s):
                    cof[f].discard(s)
        steps += 1
        if steps > budget:
            return False
    return True


def boundary_complex(K: SimplicialComplex) -> SimplicialComplex:
    """Closure of the (n-1)-simplices lying in exactly one n-simplex."""
    if is_combinatorial_manifold(K) is ManifoldStatus.NOT_MANIFOLD:
        raise ValueError("boundary_complex needs a combinatorial manifold")
    n = K.dim
    if n <= 0:
        return SimplicialComplex()
    count = K._cofacet_count
    return SimplicialComplex(f for f in K.simplices_of_dim(n - 1) if count.get(f, 0) == 1)


# -- simplicial maps ------------------------------------------------------

@dataclass(frozen=True, eq=True)
class SimplicialMap:
    """A vertex map between complexes, read as a simplicial map."""
    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: Mapping = field(default_factory=dict)

    def __call__(self, v: Vertex) -> Vertex:
        return self.vertex_map[v]

    def image_simplex(self, s: Simplex) -> Simplex:
        return tuple(sorted({self.vertex_map[v] for v in s}))

    def is_total(self) -> bool:
        return all(v in self.vertex_map for v in self.source.vertices)

    def is_simplicial(self) -> bool:
        if not self.is_total():
            return False
        tgt = self.target.simplices
        return all(self.image_simplex(s) in tgt for s in self.source.simplices)

    def is_nondegenerate(self) -> bool:
        """Injective on the vertices of every simplex."""
        return all(len(self.image_simplex(s)) == len(s)
                   for s in self.source.simplices)

    def is_injective(self) -> bool:
        return len(set(self.vertex_map.values())) == len(self.vertex_map)

    def image(self) -> SimplicialComplex:
        return SimplicialComplex._from_closed(
            self.image_simplex(s) for s in self.source.simplices)

    def is_isomorphism(self) -> bool:
        return (self.is_simplicial() and self.is_injective()
                and self.image() == self.target)

    def inverse(self) -> "SimplicialMap":
        if not self.is_injective():
            raise ValueError("map is not injective")
        return SimplicialMap(self.target, self.source,
                             {w: v for v, w in self.vertex_map.items()})

    def then(self, other: "SimplicialMap") -> "SimplicialMap":
        """Composite ``other ∘ self``."""
        return SimplicialMap(self.source, other.target,
                             {v: other.vertex_map[w] for v, w in self.vertex_map.items()})

    def restrict(self, sub: SimplicialComplex) -> "SimplicialMap":
        return SimplicialMap(sub, self.target,
                             {v: self.vertex_map[v] for v in sub.vertices})


# -- isomorphism search ---------------------------------------------------

def _label_of(labeling, v):
    if labeling is None:
        return None
    return labeling.vertex_labels.get(v)


def _slabel_of(labeling, s):
    if labeling is None:
        return None
    return labeling.simplex_labels.get(s)


def _refined_colors(complexes, initial):
    """Joint Weisfeiler-Leman refinement of vertex colors over several complexes."""
    colors = [dict(c) for c in initial]
    n_classes = len({c for cs in colors for c in cs.values()})
    while True:
        sigs = []
        for K, cs in zip(complexes, colors):
            adj = K.adjacency
            sigs.append({v: (cs[v], tuple(sorted(repr(cs[w]) for w in adj[v])))
                         for v in K.vertices})
        palette = {sig: i for i, sig in enumerate(sorted({repr(s) for ss in sigs for s in ss.values()}))}
        colors = [{v: palette[repr(s)] for v, s in ss.items()} for ss in sigs]
        new_classes = len(palette)
        if new_classes == n_classes:
            return colors
        n_classes = new_classes


def iter_isomorphisms(K1: SimplicialComplex, K2: SimplicialComplex,
                      base: tuple | None = None,
                      labels: tuple | None = None) -> Iterator[SimplicialMap]:
    """Yield simplicial isomorphisms ``K1 -> K2`` in lexicographic order.

    ``base`` is an optional pair ``(v1, v2)`` forcing ``v1 -> v2``.  ``labels``
    is an optional pair of labelings (objects with ``vertex_labels`` and
    ``simplex_labels`` mappings) which must be preserved: a vertex or top
    simplex and its image carry equal labels (missing labels compare as None).
    Branching is always on the least unmatched vertex of ``K1``, with
    candidates in increasing order, so the first isomorphism yielded is the
    lexicographically least one.
    """
    if K1.f_vector != K2.f_vector:
        return
    lab1, lab2 = labels if labels is not None else (None, None)
    if base is not None and ((base[0],) not in K1.simplices or (base[1],) not in K2.simplices):
        return

    def initial(K, lab, b):
        out = {}
        for v in K.vertices:
            per_dim = [0] * (K.dim + 1)
            for s in K.simplices_containing(v):
                per_dim[len(s) - 1] += 1
            tops = sorted(repr(_slabel_of(lab, s)) for s in K.simplices_containing(v)
                          if len(s) - 1 == K.dim)
            out[v] = repr((tuple(per_dim), repr(_label_of(lab, v)), tuple(tops), v == b))
        return out

    b1, b2 = base if base is not None else (object(), object())
    c1, c2 = _refined_colors((K1, K2), (initial(K1, lab1, b1), initial(K2, lab2, b2)))
    if sorted(c1.values()) != sorted(c2.values()):
        return
    by_color: dict = {}
    for w in K2.vertices:
        by_color.setdefault(c2[w], []).append(w)

    order = K1.vertices
    top = K1.dim
    mapping: dict = {}
    inv: dict = {}
    S1, S2 = K1.simplices, K2.simplices

    def consistent(v, w) -> bool:
        for s in K1.simplices_containing(v):
            if all(x in mapping for x in s):
                img = tuple(sorted(mapping[x] for x in s))
                if img not in S2:
                    return False
                if len(s) - 1 == top and _slabel_of(lab1, s) != _slabel_of(lab2, img):
                    return False
        for t in K2.simplices_containing(w):
            if all(y in inv for y in t):
                if tuple(sorted(inv[y] for y in t)) not in S1:
                    return False
        return True

    def extend(i):
        if i == len(order):
            yield SimplicialMap(K1, K2, dict(mapping))
            return
        v = order[i]
        for w in by_color.get(c1[v], ()):
            if w in inv:
                continue
            mapping[v] = w
            inv[w] = v
            if consistent(v, w):
                yield from extend(i + 1)
            del mapping[v]
            del inv[w]

    yield from extend(0)


def find_isomorphism(K1: SimplicialComplex, K2: SimplicialComplex,
                     base: tuple | None = None,
                     labels: tuple | None = None) -> SimplicialMap | None:
    """First isomorphism of :func:`iter_isomorphisms`, or ``None``."""
    return next(iter_isomorphisms(K1, K2, base=base, labels=labels), None)


def automorphism_count(K: SimplicialComplex, labels=None, limit: int | None = None) -> int:
    """Number of (label-preserving) automorphisms, optionally capped."""
    lab = (labels, labels) if labels is not None else None
    n = 0
    for _ in iter_isomorphisms(K, K, labels=lab):
        n += 1
        if limit is not None and n >= limit:
            break
    return n
