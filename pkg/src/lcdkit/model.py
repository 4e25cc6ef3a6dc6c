"""Local models, model sets and the modeled-on decision procedure."""
from __future__ import annotations

import enum
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .complex import (
    SimplicialComplex,
    SimplicialMap,
    diameter,
    find_isomorphism,
    is_ball,
    star,
)
from .generate import closed_manifolds
from .labeling import Labeling

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LocalModel:
    """A complex with a distinguished center vertex and optional labels."""
    complex: SimplicialComplex
    center: object
    labeling: Labeling | None = None

    @property
    def dim(self) -> int:
        return self.complex.dim

    @property
    def diameter(self):
        return diameter(self.complex)


@dataclass(frozen=True)
class ModelSet:
    models: tuple = ()
    dim: int | None = None

    def __post_init__(self):
        models = tuple(self.models)
        object.__setattr__(self, "models", models)
        dims = {m.dim for m in models}
        if len(dims) > 1:
            raise ValueError(f"models of mixed dimensions {sorted(dims)}")
        if self.dim is None:
            if not dims:
                raise ValueError("an empty model set needs an explicit dimension")
            object.__setattr__(self, "dim", dims.pop())
        elif dims and dims != {self.dim}:
            raise ValueError(f"models have dimension {dims.pop()}, expected {self.dim}")

    @property
    def labeled(self) -> bool:
        return any(m.labeling is not None for m in self.models)

    def __len__(self) -> int:
        return len(self.models)

    def __iter__(self):
        return iter(self.models)


class ModelValidity(enum.Enum):
    VALID = "valid"
    INVALID = "invalid"
    UNKNOWN = "unknown"


def validate_local_model(m: LocalModel) -> ModelValidity:
    """Check that the model complex is a combinatorial ball containing its center.

    Exact up to dimension 2; dimension 3 relies on a budgeted collapse search
    and may answer UNKNOWN; higher dimensions are UNKNOWN unless some
    necessary condition already fails.
    """
    K = m.complex
    if (m.center,) not in K.simplices:
        return ModelValidity.INVALID
    n = K.dim
    if n >= 4:
        if not K.is_pure() or not K.is_connected() or K.euler_characteristic != 1:
            return ModelValidity.INVALID
        return ModelValidity.UNKNOWN
    verdict = is_ball(K, n)
    if verdict is None:
        return ModelValidity.UNKNOWN
    return ModelValidity.VALID if verdict else ModelValidity.INVALID


# -- neighborhood search ---------------------------------------------------------

def _bfs_order(K: SimplicialComplex, root) -> list:
    order, parent = [root], {root: None}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in K.adjacency[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
                queue.append(w)
    for v in K.vertices:
        if v not in parent:
            parent[v] = None
            order.append(v)
    return order, parent


def iter_model_embeddings(M: SimplicialComplex, x, m: LocalModel,
                          vertex_labels: Mapping | None = None,
                          simplex_labels: Mapping | None = None,
                          strict: bool = True) -> Iterator[SimplicialMap]:
    """Yield injective simplicial maps ``m.complex -> M`` sending the center to
    ``x`` whose image contains the closed star of ``x``.

    When the model is labeled, images must carry the model's labels.  With
    ``strict`` a missing label on ``M`` counts as ``None``; otherwise missing
    labels are free (used while searching for a labeling of ``M``).
    """
    K, c = m.complex, m.center
    if (x,) not in M.simplices or (c,) not in K.simplices:
        return
    if len(M.simplices_containing(x)) != len(K.simplices_containing(c)):
        return
    mlab = m.labeling
    vlab = vertex_labels if vertex_labels is not None else {}
    slab = simplex_labels if simplex_labels is not None else {}
    top = K.dim
    order, parent = _bfs_order(K, c)
    mapping: dict = {}
    used: set = set()
    Msimp = M.simplices

    def label_ok(w, y) -> bool:
        if mlab is None:
            return True
        want = mlab.vertex_labels.get(w)
        if y in vlab:
            return vlab[y] == want
        return not strict or want is None

    def consistent(w) -> bool:
        for s in K.simplices_containing(w):
            if all(u in mapping for u in s):
                img = tuple(sorted(mapping[u] for u in s))
                if img not in Msimp:
                    return False
                if mlab is not None and len(s) - 1 == top:
                    want = mlab.simplex_labels.get(s)
                    if img in slab:
                        if slab[img] != want:
                            return False
                    elif strict and want is not None:
                        return False
        return True

    def extend(i):
        if i == len(order):
            f = SimplicialMap(K, M, dict(mapping))
            image = f.image().simplices
            if all(s in image for s in M.simplices_containing(x)):
                yield f
            return
        w = order[i]
        p = parent[w]
        if i == 0:
            cands = (x,)
        elif p is None:
            cands = M.vertices
        else:
            cands = M.adjacency[mapping[p]]
        for y in cands:
            if y in used or not label_ok(w, y):
                continue
            mapping[w] = y
            used.add(y)
            if consistent(w):
                yield from extend(i + 1)
            del mapping[w]
            used.discard(y)

    yield from extend(0)


def find_model_neighborhood(M: SimplicialComplex, x, m: LocalModel,
                            labeling: Labeling | None = None) -> SimplicialMap | None:
    """First embedding of the model onto a neighborhood of ``x`` in ``M``."""
    if m.dim != M.dim:
        return None
    vl = labeling.vertex_labels if labeling is not None else None
    sl = labeling.simplex_labels if labeling is not None else None
    strict = labeling is not None
    return next(iter_model_embeddings(M, x, m, vl, sl, strict=strict), None)


@dataclass(frozen=True)
class ModelingCertificate:
    """Per vertex: index of the matching model and the embedding of that model."""
    entries: Mapping = field(default_factory=dict)
    labeling: Labeling | None = None

    def validate(self, M: SimplicialComplex, ms: ModelSet) -> bool:
        for x in M.vertices:
            if x not in self.entries:
                return False
            i, f = self.entries[x]
            m = ms.models[i]
            if f.source != m.complex or f.vertex_map[m.center] != x:
                return False
            if not (f.is_simplicial() and f.is_injective()):
                return False
            image = f.image().simplices
            if not all(s in image for s in M.simplices_containing(x)):
                return False
            if m.labeling is not None:
                lab = self.labeling or Labeling()
                for v, l in m.labeling.vertex_labels.items():
                    if lab.vertex_labels.get(f.vertex_map[v]) != l:
                        return False
                for s, l in m.labeling.simplex_labels.items():
                    if lab.simplex_labels.get(f.image_simplex(s)) != l:
                        return False
        return True


def is_modeled_on(M: SimplicialComplex, ms: ModelSet,
                  labeling: Labeling | None = None) -> ModelingCertificate | None:
    """Certificate that every vertex of ``M`` has a neighborhood isomorphic to a model.

    For a labeled model set and no given ``labeling``, a labeling of ``M`` is
    searched for by backtracking over the model embeddings vertex by vertex;
    the first consistent one in vertex order is returned.
    """
    if M.dim != ms.dim or not ms.models:
        return None
    for m in ms.models:
        if validate_local_model(m) is ModelValidity.UNKNOWN:
            log.warning("model centered at %r could not be verified to be a ball", m.center)
    if not ms.labeled or labeling is not None:
        entries = {}
        for x in M.vertices:
            for i, m in enumerate(ms.models):
                f = find_model_neighborhood(M, x, m, labeling if m.labeling is not None else None)
                if f is not None:
                    entries[x] = (i, f)
                    break
            else:
                return None
        return ModelingCertificate(entries, labeling)
    return _search_labeled(M, ms)


def _search_labeled(M: SimplicialComplex, ms: ModelSet) -> ModelingCertificate | None:
    order = []
    for comp in M.components:
        order.extend(_bfs_order(M.induced(comp), comp[0])[0])
    vlab: dict = {}
    slab: dict = {}
    entries: dict = {}

    def recurse(i):
        if i == len(order):
            return True
        x = order[i]
        for mi, m in enumerate(ms.models):
            for f in iter_model_embeddings(M, x, m, vlab, slab, strict=False):
                added_v, added_s = [], []
                if m.labeling is not None:
                    for v, l in m.labeling.vertex_labels.items():
                        y = f.vertex_map[v]
                        if y not in vlab:
                            vlab[y] = l
                            added_v.append(y)
                    for s, l in m.labeling.simplex_labels.items():
                        t = f.image_simplex(s)
                        if t not in slab:
                            slab[t] = l
                            added_s.append(t)
                entries[x] = (mi, f)
                if recurse(i + 1):
                    return True
                del entries[x]
                for y in added_v:
                    del vlab[y]
                for t in added_s:
                    del slab[t]
        return False

    if not recurse(0):
        return None
    return ModelingCertificate(dict(entries), Labeling(dict(vlab), dict(slab)))


def enumerate_modeled(ms: ModelSet, max_vertices: int) -> list[SimplicialComplex]:
    """Connected closed n-manifolds (n in {1, 2}) up to ``max_vertices`` vertices
    modeled on ``ms``, one per isomorphism class."""
    if ms.dim not in (1, 2):
        raise ValueError(f"enumeration is only supported in dimensions 1 and 2, not {ms.dim}")
    if not ms.models:
        return []
    return [K for K in closed_manifolds(ms.dim, max_vertices) if is_modeled_on(K, ms) is not None]


def star_models(M: SimplicialComplex, labeling: Labeling | None = None) -> ModelSet:
    """One model per isomorphism class of (labeled) vertex stars of ``M``."""
    reps: list = []
    for v in M.vertices:
        S = star(M, v)
        lab = labeling.restrict(S) if labeling is not None else None
        cand = LocalModel(S, v, lab)
        if not any(_same_model(cand, r) for r in reps):
            reps.append(cand)
    return ModelSet(tuple(reps), dim=M.dim)


def _same_model(a: LocalModel, b: LocalModel) -> bool:
    labs = None
    if a.labeling is not None or b.labeling is not None:
        labs = (a.labeling or Labeling(), b.labeling or Labeling())
    return find_isomorphism(a.complex, b.complex, base=(a.center, b.center), labels=labs) is not None

