"""Small named complexes and model sets used in examples, tests and the CLI."""
from __future__ import annotations

import itertools

from .complex import SimplicialComplex
from .labeling import Labeling


def point() -> SimplicialComplex:
    return SimplicialComplex(vertices=[0])


def full_simplex(n: int) -> SimplicialComplex:
    return SimplicialComplex([tuple(range(n + 1))])


def simplex_boundary(n: int) -> SimplicialComplex:
    """Boundary of the (n+1)-simplex, a combinatorial n-sphere."""
    return SimplicialComplex(itertools.combinations(range(n + 2), n + 1))


def cycle(k: int) -> SimplicialComplex:
    if k < 3:
        raise ValueError("a simplicial cycle needs at least 3 vertices")
    return SimplicialComplex((i, (i + 1) % k) for i in range(k))


def path(k: int) -> SimplicialComplex:
    """Path with ``k`` vertices 0..k-1."""
    if k == 1:
        return point()
    return SimplicialComplex((i, i + 1) for i in range(k - 1))


def octahedron() -> SimplicialComplex:
    # antipodal pairs (0,5), (1,3), (2,4)
    ring = [1, 2, 3, 4]
    tris = []
    for apex in (0, 5):
        for i in range(4):
            tris.append((apex, ring[i], ring[(i + 1) % 4]))
    return SimplicialComplex(tris)


def torus7() -> SimplicialComplex:
    """The 7-vertex (Möbius) torus; its 1-skeleton is complete."""
    return SimplicialComplex(
        t for i in range(7)
        for t in ((i, (i + 1) % 7, (i + 3) % 7), (i, (i + 2) % 7, (i + 3) % 7)))


def torus9() -> SimplicialComplex:
    """3x3 grid torus; every vertex has degree 6."""
    def v(i, j):
        return 3 * (i % 3) + (j % 3)
    tris = []
    for i in range(3):
        for j in range(3):
            tris.append((v(i, j), v(i + 1, j), v(i + 1, j + 1)))
            tris.append((v(i, j), v(i, j + 1), v(i + 1, j + 1)))
    return SimplicialComplex(tris)


def rp2_6() -> SimplicialComplex:
    """6-vertex real projective plane."""
    return SimplicialComplex([
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
        (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5)])


def wheel(k: int) -> SimplicialComplex:
    """Cone from hub 0 over a k-cycle on 1..k."""
    return SimplicialComplex((0, i, i % k + 1) for i in range(1, k + 1))


def annulus6() -> SimplicialComplex:
    return SimplicialComplex([(0, 1, 3), (1, 3, 4), (1, 2, 4), (2, 4, 5), (0, 2, 5), (0, 3, 5)])


def triangles_sharing_vertex() -> SimplicialComplex:
    return SimplicialComplex([(0, 1, 2), (0, 3, 4)])


def disjoint_edges() -> SimplicialComplex:
    return SimplicialComplex([(0, 1), (2, 3)])


def wedge_of_circles() -> SimplicialComplex:
    """Two triangle-circles 0-1-2 and 0-3-4 sharing vertex 0."""
    return SimplicialComplex([(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])


# -- local models ---------------------------------------------------------------

def path3_model():
    from .model import LocalModel
    return LocalModel(path(3), 1)


def wheel_model(k: int):
    from .model import LocalModel
    return LocalModel(wheel(k), 0)


def cyclic_path_models(k: int = 3):
    """Labeled paths of 3 whose labels step cyclically 1 -> 2 -> ... -> k -> 1.

    One model per center label ``c``: neighbors labeled ``c-1`` and ``c+1``
    (mod k, labels 1..k).  Cycles modeled on this set are exactly C_{km}.
    """
    from .model import LocalModel, ModelSet
    models = []
    for c in range(1, k + 1):
        prev, nxt = (c - 2) % k + 1, c % k + 1
        models.append(LocalModel(path(3), 1, Labeling({0: prev, 1: c, 2: nxt})))
    return ModelSet(tuple(models), dim=1)


COMPLEXES = {
    "point": point,
    "triangle": lambda: full_simplex(2),
    "tetrahedron": lambda: full_simplex(3),
    "tetrahedron-boundary": lambda: simplex_boundary(2),
    "octahedron": octahedron,
    "torus7": torus7,
    "torus9": torus9,
    "rp2-6": rp2_6,
    "annulus6": annulus6,
    "wedge-of-circles": wedge_of_circles,
    "triangles-sharing-vertex": triangles_sharing_vertex,
    **{f"cycle{k}": (lambda k=k: cycle(k)) for k in range(3, 13)},
    **{f"wheel{k}": (lambda k=k: wheel(k)) for k in range(3, 9)},
}


def _single(model_factory):
    def make():
        from .model import ModelSet
        return ModelSet((model_factory(),))
    return make


MODEL_SETS = {
    "path3": _single(path3_model),
    "cyclic-path3": lambda: cyclic_path_models(3),
    **{f"wheel{k}": _single(lambda k=k: wheel_model(k)) for k in range(3, 9)},
}
