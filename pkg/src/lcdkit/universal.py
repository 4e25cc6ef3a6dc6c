"""Models read off a branched manifold, and the universal branched manifold of a model set.

The universal build colors a finite set of witness manifolds jointly, takes
the geography of every witness vertex and glues the witnesses along equal
geographies.  Each vertex of the result projects to the color image of a
witness star.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .branched import (
    BranchedManifold,
    BranchedReport,
    Immersion,
    LocalProjection,
    find_immersion,
    immersion_violation,
    is_immersion,
    is_nice,
    validate_branched,
)
from .complex import SimplicialComplex, SimplicialMap, disjoint_union, find_isomorphism, star
from .generate import closed_manifolds
from .labeling import Coloring, Labeling, compute_d_coloring, geographize, is_d_coloring
from .model import LocalModel, ModelSet, _same_model, is_modeled_on

log = logging.getLogger(__name__)


class SaturationError(ValueError):
    """A manifold has a geography the witnesses never produced."""


def models_from_branched(W: BranchedManifold, witnesses) -> ModelSet:
    """Labeled stars of immersed manifolds, labels being the image vertices.

    ``witnesses`` is a sequence of ``(M, Immersion)`` pairs.  One model is kept
    per labeled isomorphism class of ``(star(u), u)``.
    """
    if not is_nice(W):
        raise ValueError("branched manifold is not nicely triangulated")
    reps: list = []
    for k, (M, imm) in enumerate(witnesses):
        reason, _ = immersion_violation(M, W, imm.map)
        if reason is not None:
            raise ValueError(f"witness {k} does not carry an immersion: {reason}")
        zeta = imm.vertex_map
        for u in M.vertices:
            S = star(M, u)
            cand = LocalModel(S, u, Labeling({v: zeta[v] for v in S.vertices}))
            if not any(_same_model(cand, r) for r in reps):
                reps.append(cand)
    return ModelSet(tuple(reps), dim=W.dim)


@dataclass
class UniversalBuild:
    models: ModelSet
    d: int
    witnesses: tuple
    G: tuple
    W: BranchedManifold
    theta: tuple
    psi: dict
    coloring: Coloring
    labelings: tuple
    report: BranchedReport = field(default_factory=BranchedReport)

    @property
    def parameters(self) -> dict:
        return {"d": self.d, "witnesses": len(self.witnesses), "geographies": len(self.G),
                "dim": self.models.dim}

    @property
    def sheet_models(self) -> list:
        """Every sheet with its chart, i.e. the pseudo-geography labeled sheets."""
        return [(x, D, p.chart) for x, p in zip(self.W.complex.vertices, self.W.projections)
                for D in p.sheets]


def default_radius(ms: ModelSet) -> int:
    diam = max((m.diameter for m in ms.models), default=0)
    return max(2, int(diam) + 1)


def build_universal(ms: ModelSet, witnesses, d: int | None = None) -> UniversalBuild:
    """Glue the jointly colored witnesses along equal geographies."""
    witnesses = tuple(witnesses)
    diam = max((m.diameter for m in ms.models), default=0)
    if d is None:
        d = default_radius(ms)
    elif d < 2 or d <= diam:
        raise ValueError(f"radius d={d} must be at least 2 and exceed the model diameter {diam}")

    labelings = []
    for k, M in enumerate(witnesses):
        cert = is_modeled_on(M, ms)
        if cert is None:
            raise ValueError(f"witness {k} is not modeled on the model set")
        labelings.append(cert.labeling if ms.labeled else None)

    Q = disjoint_union(witnesses)
    qlab = None
    if ms.labeled:
        vl, sl = {}, {}
        for k, lab in enumerate(labelings):
            vl.update({(k, v): l for v, l in lab.vertex_labels.items()})
            sl.update({tuple((k, v) for v in s): l for s, l in lab.simplex_labels.items()})
        qlab = Labeling(vl, sl)
    coloring = compute_d_coloring(Q, d)
    gl, G = geographize(Q, coloring, d, qlab)
    index = {g: i for i, g in enumerate(G)}
    cmap = coloring.colors
    theta_q = {q: index[gl[q]] for q in Q.vertices}
    psi = {i: g.center_color for i, g in enumerate(G)}

    Wc = SimplicialComplex((tuple(theta_q[v] for v in s) for s in Q.simplices), vertices=range(len(G)))
    preimages: dict = {}
    for q in Q.vertices:
        preimages.setdefault(theta_q[q], []).append(q)

    projections = []
    for x in Wc.vertices:
        qs = preimages[x]
        chart = star(Q, qs[0]).relabel(cmap)
        domain = star(Wc, x)
        sheets = []
        for q in qs:
            D = star(Q, q).relabel(theta_q)
            if D not in sheets:
                sheets.append(D)
        projections.append(LocalProjection(domain, chart, {g: psi[g] for g in domain.vertices}, tuple(sheets)))
    W = BranchedManifold(Wc, tuple(projections), ms.dim)
    report = validate_branched(W)
    if not report.ok:
        raise RuntimeError("universal build failed validation: "
                           + "; ".join(str(v) for v in report.violations))

    theta = []
    for k, M in enumerate(witnesses):
        f = SimplicialMap(M, Wc, {v: theta_q[(k, v)] for v in M.vertices})
        imm = is_immersion(M, W, f)
        if imm is None:
            raise RuntimeError(f"geography map of witness {k} is not an immersion")
        theta.append(imm)
    return UniversalBuild(ms, d, witnesses, G, W, tuple(theta), psi, coloring,
                          tuple(labelings), report)


def canonical_immersion(build: UniversalBuild, M: SimplicialComplex,
                        coloring=None, labeling: Labeling | None = None) -> Immersion:
    """The geography map ``v -> geography(v)`` of ``M`` into the build.

    A witness gets its stored immersion.  Any other manifold is colored (by
    ``coloring`` if given, else greedily) and, for labeled model sets,
    labeled through a modeling certificate unless ``labeling`` is given.
    """
    for k, X in enumerate(build.witnesses):
        if X == M and coloring is None and labeling is None:
            return build.theta[k]
    d = build.d
    if coloring is None:
        coloring, labeling = _witness_transport(build, M, labeling)
    if coloring is None:
        coloring = compute_d_coloring(M, d)
    elif not is_d_coloring(M, coloring, d):
        raise ValueError(f"not a {d}-coloring")
    if build.models.labeled and labeling is None:
        cert = is_modeled_on(M, build.models)
        if cert is None:
            raise ValueError("manifold is not modeled on the model set")
        labeling = cert.labeling
    if not build.models.labeled:
        labeling = None
    gl, _ = geographize(M, coloring, d, labeling)
    index = {g: i for i, g in enumerate(build.G)}
    vmap = {}
    for v in M.vertices:
        g = gl[v]
        if g not in index:
            raise SaturationError(f"witness set not saturated: geography of {v!r} is not in G")
        vmap[v] = index[g]
    f = SimplicialMap(M, build.W.complex, vmap)
    reason, witnesses = immersion_violation(M, build.W, f)
    if reason is not None:
        raise RuntimeError(f"geography map is not an immersion: {reason}")
    return Immersion(f, witnesses)


def _witness_transport(build: UniversalBuild, M: SimplicialComplex, labeling):
    """Pull back the coloring (and labeling) of a witness isomorphic to ``M``."""
    cmap = build.coloring.colors
    for k, X in enumerate(build.witnesses):
        if X.f_vector != M.f_vector:
            continue
        labels = None
        if build.models.labeled and labeling is not None:
            labels = (labeling, build.labelings[k])
        f = find_isomorphism(M, X, labels=labels)
        if f is None:
            continue
        colors = {v: cmap[(k, f(v))] for v in M.vertices}
        if build.models.labeled and labeling is None:
            lab = build.labelings[k]
            labeling = Labeling({v: lab.vertex_labels[f(v)] for v in M.vertices
                                 if f(v) in lab.vertex_labels},
                                {s: lab.simplex_labels[f.image_simplex(s)] for s in M.simplices
                                 if f.image_simplex(s) in lab.simplex_labels})
        return Coloring(colors, build.d), labeling
    return None, labeling


# -- desk-scale equivalence check ---------------------------------------------------

def _named_surfaces():
    from . import fixtures
    return [("tetrahedron-boundary", fixtures.simplex_boundary(2)),
            ("octahedron", fixtures.octahedron()),
            ("rp2-6", fixtures.rp2_6()),
            ("torus7", fixtures.torus7())]


def manifold_name(K: SimplicialComplex, serial: int = 0) -> str:
    """Readable name: ``C<k>`` for cycles, a fixture name or a census tag for surfaces."""
    if K.dim == 1:
        return f"C{len(K.vertices)}"
    for name, X in _named_surfaces():
        if X.f_vector == K.f_vector and find_isomorphism(K, X) is not None:
            return name
    return f"S{len(K.vertices)}.chi{K.euler_characteristic}.{serial}"


@dataclass
class EquivalenceReport:
    dim: int
    max_vertices: int
    d: int
    modeled: list
    immersed: list
    disagreements: list
    unsaturated: list = field(default_factory=list)

    @property
    def agrees(self) -> bool:
        return not self.disagreements

    def summary(self) -> str:
        lines = [f"dimension {self.dim}, up to {self.max_vertices} vertices, d={self.d}",
                 f"modeled:  {', '.join(self.modeled) or '-'}",
                 f"immersed: {', '.join(self.immersed) or '-'}",
                 f"disagreements: {', '.join(self.disagreements) or 'none'}"]
        if self.unsaturated:
            lines.append(f"modeled but outside the witness geographies: {', '.join(self.unsaturated)}")
        lines.append("bounds are heuristic: the witness set may not realize every geography")
        return "\n".join(lines)


def verify_equivalence(ms: ModelSet, build: UniversalBuild, max_vertices: int) -> EquivalenceReport:
    """Compare ``is_modeled_on`` with ``find_immersion`` on every small closed manifold."""
    n = ms.dim
    if n not in (1, 2):
        raise ValueError(f"equivalence check supports dimensions 1 and 2, not {n}")
    modeled, immersed, disagree, unsat = [], [], [], []
    serials: dict = {}
    for K in closed_manifolds(n, max_vertices):
        key = (len(K.vertices), K.euler_characteristic)
        serials[key] = serials.get(key, 0) + 1
        name = manifold_name(K, serials[key])
        a = is_modeled_on(K, ms) is not None
        b = find_immersion(K, build.W) is not None
        if a:
            modeled.append(name)
            try:
                canonical_immersion(build, K)
            except SaturationError:
                unsat.append(name)
        if b:
            immersed.append(name)
        if a != b:
            disagree.append(name)
    return EquivalenceReport(n, max_vertices, build.d, modeled, immersed, disagree, unsat)
