"""Stellar, chain and standard subdivisions, and the label codec built on them.

The codec replaces every labeled top simplex by a standard subdivision whose
boundary-vertex degrees spell out the labels; decoding finds the blocks again
from vertex degrees and reads the labels back.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .complex import (
    SimplicialComplex,
    Simplex,
    faces,
    facets_of,
    find_isomorphism,
    fresh_vertices,
    is_combinatorial_manifold,
    simplex,
)
from .labeling import Labeling, label_key


class DecodeError(ValueError):
    """The complex does not decompose into blocks of the family."""


@dataclass(frozen=True)
class SubdivisionRecord:
    original: SimplicialComplex
    result: SimplicialComplex
    simplex_origin: Mapping = field(default_factory=dict)
    new_vertices: frozenset = frozenset()

    def blocks(self) -> dict:
        """Original top simplex -> subcomplex of ``result`` subdividing it."""
        grouped: dict = {}
        for s, o in self.simplex_origin.items():
            grouped.setdefault(o, []).append(s)
        return {o: SimplicialComplex(ts) for o, ts in sorted(grouped.items())}


class _Subdivider:
    """Mutable working state shared by the subdivision operations."""

    def __init__(self, K: SimplicialComplex, fresh: Iterator | None = None):
        self.original = K
        self.n = K.dim
        self.simplices = set(K.simplices)
        self.origin = {s: s for s in K.top_simplices}
        self.new: list = []
        self.fresh = fresh if fresh is not None else fresh_vertices(K.vertices)

    def stellar(self, sigma: Simplex, x=None) -> object:
        if sigma not in self.origin:
            raise ValueError(f"{sigma!r} is not a top simplex")
        if x is None:
            x = next(self.fresh)
        src = self.origin.pop(sigma)
        self.simplices.discard(sigma)
        for tau in facets_of(sigma):
            cone = simplex(tau + (x,))
            self.simplices.update(faces(cone))
            self.origin[cone] = src
        self.new.append(x)
        return x

    def chain(self, sigma: Simplex, tau: Simplex, k: int) -> list:
        xs = []
        current = sigma
        for _ in range(k):
            x = self.stellar(current)
            xs.append(x)
            current = simplex(tau + (x,))
        return xs

    def record(self) -> SubdivisionRecord:
        return SubdivisionRecord(self.original,
                                 SimplicialComplex._from_closed(self.simplices),
                                 dict(self.origin), frozenset(self.new))


def _check_top(K: SimplicialComplex, sigma) -> Simplex:
    sigma = simplex(sigma)
    if K.dim < 2:
        raise ValueError("stellar subdivision needs dimension n >= 2")
    if sigma not in K.simplices or len(sigma) - 1 != K.dim:
        raise ValueError(f"{sigma!r} is not a top-dimensional simplex of the complex")
    return sigma


def stellar_subdivide(K: SimplicialComplex, sigma, x=None) -> SubdivisionRecord:
    """Replace top simplex ``sigma`` by the cone from a new vertex over its boundary."""
    sigma = _check_top(K, sigma)
    sub = _Subdivider(K)
    sub.stellar(sigma, x)
    return sub.record()


def chain_subdivide(K: SimplicialComplex, sigma, tau, k: int) -> SubdivisionRecord:
    """k successive stellar subdivisions, each inside the newest simplex on ``tau``."""
    sigma = _check_top(K, sigma)
    tau = simplex(tau)
    if len(tau) != len(sigma) - 1 or not set(tau) <= set(sigma):
        raise ValueError(f"{tau!r} is not a facet of {sigma!r}")
    if k < 1:
        raise ValueError("chain length must be at least 1")
    sub = _Subdivider(K)
    sub.chain(sigma, tau, k)
    return sub.record()


def expected_boundary_degree(n: int, N: int, j: int) -> int:
    """Degree of boundary vertex v_j inside a standard subdivision."""
    if not 0 <= j <= n:
        raise ValueError(f"vertex index {j} out of range 0..{n}")
    if N < 1:
        raise ValueError("N must be positive")
    return n + 1 + sum(N + i for i in range(n + 1) if i != j)


def _standard(sub: _Subdivider, sigma: Simplex, N: int, order: tuple) -> None:
    x0 = sub.stellar(sigma)
    for i, vi in enumerate(order):
        tau = tuple(v for v in sigma if v != vi)
        sub.chain(simplex(tau + (x0,)), tau, N + i)


def standard_subdivide(K: SimplicialComplex, sigma, N: int, order=None) -> SubdivisionRecord:
    """Standard subdivision of a top simplex.

    One stellar subdivision at a new center x0, then for each i an
    (N+i)-chain subdivision based on the facet opposite ``order[i]``.  The
    vertex ``order[j]`` ends with degree ``expected_boundary_degree(n, N, j)``
    inside the block; interior vertices have degree at most 2n+2.
    ``order`` defaults to the sorted vertices of ``sigma``.
    """
    sigma = _check_top(K, sigma)
    if N < 1:
        raise ValueError("N must be positive")
    order = tuple(sigma) if order is None else tuple(order)
    if sorted(order) != list(sigma):
        raise ValueError("order must list the vertices of sigma")
    sub = _Subdivider(K)
    _standard(sub, sigma, N, order)
    return sub.record()


# -- the label codec -----------------------------------------------------------

@dataclass(frozen=True)
class FamilyEntry:
    """One labeled-simplex class and its standard subdivision K(sigma).

    ``block`` lives on boundary vertices ``0..n`` (vertex j carries
    ``vertex_labels[j]`` and has degree ``boundary_degrees[j]``) plus
    interior vertices ``n+1, n+2, ...``.
    """
    vertex_labels: tuple
    simplex_label: object
    N: int
    block: SimplicialComplex
    boundary_degrees: tuple

    @property
    def key(self) -> tuple:
        return (self.vertex_labels, self.simplex_label)


@dataclass(frozen=True)
class StandardSubdivisionFamily:
    n: int
    entries: tuple = ()

    @property
    def threshold(self) -> int:
        """Interior vertices have degree at most this; boundary ones exceed it."""
        return 2 * (self.n + 1)

    @property
    def degree_decoder(self) -> dict:
        out = {}
        for e in self.entries:
            for deg, lab in zip(e.boundary_degrees, e.vertex_labels):
                out[deg] = lab
        return out

    def entry_for(self, key) -> FamilyEntry:
        for e in self.entries:
            if e.key == key:
                return e
        raise KeyError(key)

    @property
    def parameters(self) -> list:
        return [{"vertex_labels": list(e.vertex_labels), "simplex_label": e.simplex_label,
                 "N": e.N} for e in self.entries]


def simplex_class(s: Simplex, labeling: Labeling | None) -> tuple:
    """Isomorphism class of a labeled top simplex: sorted vertex labels + simplex label."""
    if labeling is None:
        return (tuple(None for _ in s), None)
    labs = tuple(sorted((labeling.vertex_labels.get(v) for v in s), key=label_key))
    return (labs, labeling.simplex_labels.get(s))


def minimal_N(n: int) -> int:
    """Least N whose smallest boundary degree exceeds 2(n+1)."""
    N = 1
    while expected_boundary_degree(n, N, n) <= 2 * (n + 1):
        N += 1
    return N


def _family_block(n: int, N: int) -> tuple[SimplicialComplex, tuple]:
    sigma = tuple(range(n + 1))
    sub = _Subdivider(SimplicialComplex([sigma]))
    _standard(sub, sigma, N, sigma)
    block = sub.record().result
    degs = tuple(len(block.adjacency[j]) for j in sigma)
    return block, degs


def family_from_classes(n: int, classes: Iterable[tuple]) -> StandardSubdivisionFamily:
    """Family for the given class keys, using N_t = N_min + t(n+1)."""
    if n < 2:
        raise ValueError("the label codec needs dimension n >= 2")
    keys = sorted(set(classes), key=lambda k: (tuple(label_key(l) for l in k[0]), label_key(k[1])))
    N0 = minimal_N(n)
    entries = []
    for t, (vlabels, slabel) in enumerate(keys):
        N = N0 + t * (n + 1)
        block, degs = _family_block(n, N)
        entries.append(FamilyEntry(tuple(vlabels), slabel, N, block, degs))
    return StandardSubdivisionFamily(n, tuple(entries))


def build_family(models, n: int | None = None) -> StandardSubdivisionFamily:
    """Family covering every labeled top-simplex class appearing in ``models``.

    ``models`` is a ModelSet or an iterable of ``(complex, labeling)`` pairs.
    """
    if hasattr(models, "models"):
        n = models.dim if n is None else n
        pairs = [(m.complex, m.labeling) for m in models.models]
    else:
        pairs = list(models)
    if n is None:
        n = max((K.dim for K, _ in pairs), default=-1)
    if n < 2:
        raise ValueError("the label codec needs dimension n >= 2")
    classes = set()
    for K, lab in pairs:
        if K.dim != n:
            raise ValueError(f"complex of dimension {K.dim} in a family of dimension {n}")
        for s in K.top_simplices:
            classes.add(simplex_class(s, lab))
    return family_from_classes(n, classes)


def encode(M: SimplicialComplex, labeling: Labeling | None,
           family: StandardSubdivisionFamily) -> SubdivisionRecord:
    """Replace each labeled top simplex of ``M`` by its family block.

    The result (``record.result``) carries no labels.
    """
    n = family.n
    if M.dim != n or not M.is_pure():
        raise ValueError(f"encode needs a pure {n}-dimensional complex")
    entries = {e.key: e for e in family.entries}
    sub = _Subdivider(M)
    for s in M.top_simplices:
        key = simplex_class(s, labeling)
        if key not in entries:
            raise ValueError(f"labeled simplex {s!r} with class {key!r} has no family entry")
        e = entries[key]
        lab = (labeling.vertex_labels.get if labeling is not None else (lambda v: None))
        order = tuple(sorted(s, key=lambda v: (label_key(lab(v)), v)))
        _standard(sub, s, e.N, order)
    return sub.record()


def block_intersection_violations(record: SubdivisionRecord) -> list:
    """Pairs of blocks whose intersection is not a single common boundary simplex.

    Two distinct blocks A, B may only meet in one simplex lying in both of
    their boundaries (empty intersections are fine).
    """
    blocks = record.blocks()
    bad = []
    for (a, A), (b, B) in itertools.combinations(blocks.items(), 2):
        common = A.intersection(B)
        if len(common) == 0:
            continue
        shared = set(a) & set(b)
        if len(common.facets) != 1 or set(common.vertices) != shared:
            bad.append((a, b))
    return bad


def decode(Mstar: SimplicialComplex, family: StandardSubdivisionFamily
           ) -> tuple[SimplicialComplex, Labeling]:
    """Recover the labeled complex from an encoded one.

    Vertices of degree at most 2(n+1) are block interiors; each connected set
    of them, with the top simplices touching it, is one block.  Blocks are
    matched to family entries by their boundary-degree signature and then
    confirmed by an explicit isomorphism.
    """
    n = family.n
    lam = family.threshold
    if Mstar.dim != n or not Mstar.is_pure():
        raise DecodeError(f"expected a pure {n}-dimensional complex")
    if not family.entries:
        raise DecodeError("empty family")
    if not is_combinatorial_manifold(Mstar).is_manifold:
        raise DecodeError("input is not a combinatorial manifold")
    adj = Mstar.adjacency
    interior = {v for v in Mstar.vertices if len(adj[v]) <= lam}
    comp_of: dict = {}
    comps = []
    for v in Mstar.vertices:
        if v not in interior or v in comp_of:
            continue
        stack, comp = [v], []
        comp_of[v] = len(comps)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w in interior and w not in comp_of:
                    comp_of[w] = len(comps)
                    stack.append(w)
        comps.append(comp)
    tops_of: list = [[] for _ in comps]
    for s in Mstar.top_simplices:
        owners = {comp_of[v] for v in s if v in interior}
        if not owners:
            raise DecodeError(f"top simplex {s!r} has no interior vertex; not covered by blocks")
        if len(owners) > 1:
            raise DecodeError(f"top simplex {s!r} touches two block interiors")
        tops_of[owners.pop()].append(s)

    vertex_labels: dict = {}
    simplex_labels: dict = {}
    new_tops = []
    for ci, comp in enumerate(comps):
        block = SimplicialComplex(tops_of[ci])
        boundary = [v for v in block.vertices if v not in interior]
        if len(boundary) != n + 1:
            raise DecodeError(
                f"block around {min(comp)!r} has {len(boundary)} boundary vertices, expected {n + 1}; "
                "not covered by family blocks")
        bdeg = {v: len(block.adjacency[v]) for v in boundary}
        sig = tuple(sorted(bdeg.values()))
        matches = [e for e in family.entries if tuple(sorted(e.boundary_degrees)) == sig]
        if not matches:
            raise DecodeError(f"block around {min(comp)!r} has boundary degrees {sig}, matching no entry")
        if len(matches) > 1:
            raise DecodeError(f"block around {min(comp)!r} matches several entries")
        e = matches[0]
        deg_to_j = {deg: j for j, deg in enumerate(e.boundary_degrees)}
        if len(deg_to_j) != n + 1 or len(set(bdeg.values())) != n + 1:
            raise DecodeError("boundary degrees are not distinct")
        lab_block = Labeling({v: ("b", bdeg[v]) if v in bdeg else "i" for v in block.vertices})
        lab_entry = Labeling({v: ("b", e.boundary_degrees[v]) if v <= n else "i"
                              for v in e.block.vertices})
        if find_isomorphism(block, e.block, labels=(lab_block, lab_entry)) is None:
            raise DecodeError(f"block around {min(comp)!r} is not isomorphic to its family entry")
        sigma = simplex(boundary)
        if sigma in simplex_labels:
            raise DecodeError(f"two blocks share the boundary {sigma!r}")
        for v in boundary:
            lab = e.vertex_labels[deg_to_j[bdeg[v]]]
            if v in vertex_labels and vertex_labels[v] != lab:
                raise DecodeError(f"vertex {v!r} decodes to labels {vertex_labels[v]!r} and {lab!r}")
            vertex_labels[v] = lab
        simplex_labels[sigma] = e.simplex_label
        new_tops.append(sigma)
    N_complex = SimplicialComplex(new_tops)
    return N_complex, Labeling(
        {v: l for v, l in vertex_labels.items() if l is not None},
        {s: l for s, l in simplex_labels.items() if l is not None})
