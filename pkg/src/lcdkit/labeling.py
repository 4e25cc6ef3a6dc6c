"""Labelings, d-colorings and geography labelings."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Mapping

from .complex import (
    SimplicialComplex,
    SimplicialMap,
    distances_from,
    neighborhood,
)


def label_key(x):
    """Total sort key for heterogeneous labels."""
    if x is None:
        return (0, 0, "")
    if isinstance(x, bool):
        return (1, int(x), "")
    if isinstance(x, int):
        return (2, x, "")
    if isinstance(x, str):
        return (3, 0, x)
    return (4, 0, repr(x))


@dataclass(frozen=True)
class Labeling:
    """Labels on vertices and top simplices.

    Keys of ``simplex_labels`` are sorted vertex tuples.  Missing entries mean
    "unlabeled" and compare as ``None``.
    """
    vertex_labels: Mapping = field(default_factory=dict)
    simplex_labels: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "vertex_labels", dict(self.vertex_labels))
        object.__setattr__(self, "simplex_labels",
                           {tuple(sorted(s)): l for s, l in dict(self.simplex_labels).items()})

    @property
    def alphabet(self) -> frozenset:
        return frozenset(self.vertex_labels.values()) | frozenset(self.simplex_labels.values())

    def check_domain(self, K: SimplicialComplex) -> None:
        """Raise if a label sits outside vertices and top simplices of ``K``."""
        for v in self.vertex_labels:
            if (v,) not in K.simplices:
                raise ValueError(f"label on unknown vertex {v!r}")
        for s in self.simplex_labels:
            if s not in K.simplices or len(s) - 1 != K.dim:
                raise ValueError(f"simplex label on {s!r}, which is not a top simplex")

    def restrict(self, K: SimplicialComplex) -> "Labeling":
        return Labeling(
            {v: l for v, l in self.vertex_labels.items() if (v,) in K.simplices},
            {s: l for s, l in self.simplex_labels.items()
             if s in K.simplices and len(s) - 1 == K.dim})

    def pushforward(self, f: SimplicialMap) -> "Labeling":
        """Transport the labels along an injective vertex map."""
        vm = f.vertex_map
        return Labeling(
            {vm[v]: l for v, l in self.vertex_labels.items() if v in vm},
            {tuple(sorted(vm[x] for x in s)): l for s, l in self.simplex_labels.items()
             if all(x in vm for x in s)})


# -- colorings --------------------------------------------------------------

@dataclass(frozen=True)
class Coloring:
    """A vertex coloring by integers, meant to be injective on d-neighborhoods."""
    colors: Mapping
    d: int

    def __post_init__(self):
        object.__setattr__(self, "colors", dict(self.colors))

    @property
    def palette(self) -> tuple:
        return tuple(sorted(set(self.colors.values())))

    def __getitem__(self, v):
        return self.colors[v]

    def as_labeling(self) -> Labeling:
        return Labeling(self.colors)


def _color_map(colors) -> Mapping:
    if isinstance(colors, Coloring):
        return colors.colors
    if isinstance(colors, Labeling):
        return colors.vertex_labels
    return colors


def is_d_coloring(K: SimplicialComplex, colors, d: int) -> bool:
    """True iff the coloring is injective on the vertices of every N(K, v, d).

    Uses the equivalent pairwise test: two distinct vertices share some
    d-neighborhood exactly when their distance is at most 2d.
    """
    cmap = _color_map(colors)
    missing = [v for v in K.vertices if v not in cmap]
    if missing:
        raise ValueError(f"coloring is not total; uncolored vertices {missing[:5]!r}")
    for u in K.vertices:
        cu = cmap[u]
        for w, dist in distances_from(K, u, 2 * d).items():
            if w != u and cmap[w] == cu:
                return False
    return True


def compute_d_coloring(K: SimplicialComplex, d: int) -> Coloring:
    """Greedy d-coloring: vertices in order, each gets the least free color.

    A color is free for ``v`` when no already colored vertex within distance
    2d uses it, so at most ``max_v |N(K, v, 2d)|`` colors are used.
    """
    colors: dict = {}
    for v in K.vertices:
        taken = {colors[w] for w in distances_from(K, v, 2 * d) if w in colors}
        c = 0
        while c in taken:
            c += 1
        colors[v] = c
    return Coloring(colors, d)


# -- geographies ---------------------------------------------------------------

@dataclass(frozen=True)
class Geography:
    """Canonical form of a colored d-neighborhood.

    The chart is the neighborhood with every vertex renamed to its color.
    ``labels`` and ``simplex_labels`` carry extra (model) labels, keyed by
    color, when the host complex is labeled.
    """
    center_color: Hashable
    chart: SimplicialComplex
    d: int
    labels: tuple = ()
    simplex_labels: tuple = ()

    @property
    def sort_key(self):
        return (label_key(self.center_color), len(self.chart.vertices),
                tuple(sorted(self.chart.simplices, key=lambda s: (len(s), s))),
                tuple((c, label_key(l)) for c, l in self.labels),
                tuple((s, label_key(l)) for s, l in self.simplex_labels))

    def __repr__(self) -> str:
        return (f"Geography(center={self.center_color!r}, "
                f"colors={list(self.chart.vertices)}, facets={list(self.chart.facets)})")


def _geography(K, cmap, v, d, labeling=None) -> Geography:
    N = neighborhood(K, v, d)
    chart = N.relabel({u: cmap[u] for u in N.vertices})
    labels: tuple = ()
    slabels: tuple = ()
    if labeling is not None:
        labels = tuple(sorted(((cmap[u], labeling.vertex_labels[u]) for u in N.vertices
                               if u in labeling.vertex_labels), key=lambda p: p[0]))
        slabels = tuple(sorted(((tuple(sorted(cmap[u] for u in s)), labeling.simplex_labels[s])
                                for s in N.simplices_of_dim(K.dim)
                                if s in labeling.simplex_labels), key=lambda p: p[0]))
    return Geography(cmap[v], chart, d, labels, slabels)


def compute_geography(K: SimplicialComplex, colors, v, d: int,
                      labeling: Labeling | None = None) -> Geography:
    """Geography of ``v``: its colored d-neighborhood renamed by colors."""
    cmap = _color_map(colors)
    if not is_d_coloring(K, cmap, d):
        raise ValueError(f"not a {d}-coloring")
    return _geography(K, cmap, v, d, labeling)


@dataclass(frozen=True)
class GeographyLabeling:
    """A d-coloring together with the geography of every vertex."""
    coloring: Coloring
    d: int
    geography_of: Mapping
    labeling: Labeling | None = None

    def __getitem__(self, v) -> Geography:
        return self.geography_of[v]


def geographize(K: SimplicialComplex, colors, d: int,
                labeling: Labeling | None = None) -> tuple[GeographyLabeling, tuple]:
    """Assign every vertex its geography; also return the sorted set G."""
    cmap = _color_map(colors)
    if not is_d_coloring(K, cmap, d):
        raise ValueError(f"not a {d}-coloring")
    geo = {v: _geography(K, cmap, v, d, labeling) for v in K.vertices}
    G = tuple(sorted(set(geo.values()), key=lambda g: g.sort_key))
    coloring = colors if isinstance(colors, Coloring) else Coloring(cmap, d)
    return GeographyLabeling(coloring, d, geo, labeling), G


def geography_transport(K: SimplicialComplex, gl: GeographyLabeling, u, v) -> SimplicialMap:
    """The unique color-preserving isomorphism N(K, u, d) -> N(K, v, d)."""
    if gl.geography_of[u] != gl.geography_of[v]:
        raise ValueError(f"geographies of {u!r} and {v!r} differ")
    d = gl.d
    cmap = gl.coloring.colors
    Nu, Nv = neighborhood(K, u, d), neighborhood(K, v, d)
    by_color = {cmap[w]: w for w in Nv.vertices}
    return SimplicialMap(Nu, Nv, {w: by_color[cmap[w]] for w in Nu.vertices})
