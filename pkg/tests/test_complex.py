import itertools
import math

import pytest
from hypothesis import given, strategies as st

from lcdkit.complex import (
    ManifoldStatus,
    SimplicialComplex,
    SimplicialMap,
    automorphism_count,
    boundary_complex,
    degree,
    diameter,
    disjoint_union,
    eccentricity,
    find_isomorphism,
    is_ball,
    is_combinatorial_manifold,
    is_sphere,
    iter_isomorphisms,
    link,
    neighborhood,
    simplicial_distance,
    star,
)
from lcdkit import fixtures as fx

from oracles import all_isomorphisms, bfs_distances
from strategies import complexes, graphs


def test_face_closure_and_vertices():
    K = SimplicialComplex([(2, 0, 1)])
    assert (0, 1, 2) in K.simplices
    assert {(0,), (1,), (2,), (0, 1), (0, 2), (1, 2)} <= K.simplices
    assert K.vertices == (0, 1, 2)
    assert K.dim == 2
    assert SimplicialComplex().dim == -1


@given(complexes())
def test_face_closure_property(K):
    for s in K.simplices:
        for k in range(1, len(s)):
            for f in itertools.combinations(s, k):
                assert f in K.simplices
    for v in K.vertices:
        assert (v,) in K.simplices


def test_degree_examples():
    O = fx.octahedron()
    assert all(degree(O, v) == 4 for v in O.vertices)
    assert degree(fx.point(), 0) == 0
    T = fx.torus7()
    assert all(degree(T, v) == 6 for v in T.vertices)


def test_distance_examples():
    C6 = fx.cycle(6)
    assert simplicial_distance(C6, 0, 3) == 3
    assert simplicial_distance(C6, 2, 2) == 0
    assert simplicial_distance(fx.disjoint_edges(), 0, 2) == math.inf


@given(graphs())
def test_distance_matches_bfs_and_is_metric(K):
    for u in K.vertices:
        ref = bfs_distances(K, u)
        for v in K.vertices:
            d = simplicial_distance(K, u, v)
            assert d == ref.get(v, math.inf)
    if K.is_connected():
        V = K.vertices
        for a, b, c in itertools.product(V, repeat=3):
            assert simplicial_distance(K, a, c) <= simplicial_distance(K, a, b) + simplicial_distance(K, b, c)


def test_neighborhood_examples():
    N = neighborhood(fx.cycle(6), 0, 1)
    assert N.f_vector == (3, 2)
    assert neighborhood(fx.octahedron(), 0, 0).simplices == {(0,)}
    O = fx.octahedron()
    assert neighborhood(O, 0, 1) == star(O, 0)
    assert star(O, 0).f_vector == (5, 8, 4)


@given(complexes())
def test_neighborhoods_grow_to_component(K):
    for v in K.vertices:
        prev = neighborhood(K, v, 0)
        for r in range(1, 5):
            cur = neighborhood(K, v, r)
            assert prev.issubcomplex(cur)
            prev = cur
        comp = next(c for c in K.components if v in c)
        ecc = eccentricity(K.induced(comp), v)
        assert neighborhood(K, v, int(ecc)) == K.induced(comp)


def test_closed_star_differs_from_one_ball_in_triangle_cycle():
    C3 = fx.cycle(3)
    assert star(C3, 0).f_vector == (3, 2)
    assert neighborhood(C3, 0, 1).f_vector == (3, 3)


def test_link_examples():
    O = fx.octahedron()
    L = link(O, 0)
    assert L.f_vector == (4, 4) and is_sphere(L, 1)
    assert link(fx.full_simplex(2), 0).simplices == {(1,), (2,), (1, 2)}
    assert link(fx.path(2), 0).simplices == {(1,)}


def test_manifold_recognition_corpus():
    C = ManifoldStatus
    expect = {
        "octahedron": C.CLOSED, "torus7": C.CLOSED, "torus9": C.CLOSED, "rp2-6": C.CLOSED,
        "cycle5": C.CLOSED, "triangle": C.BOUNDARY, "annulus6": C.BOUNDARY, "wheel6": C.BOUNDARY,
        "triangles-sharing-vertex": C.NOT_MANIFOLD, "wedge-of-circles": C.NOT_MANIFOLD,
        "tetrahedron": C.BOUNDARY, "tetrahedron-boundary": C.CLOSED,
    }
    for name, status in expect.items():
        assert is_combinatorial_manifold(fx.COMPLEXES[name]()) is status, name
    assert is_combinatorial_manifold(fx.full_simplex(4)) is C.UNKNOWN


def test_euler_characteristics():
    assert fx.octahedron().euler_characteristic == 2
    assert fx.torus7().euler_characteristic == 0
    assert fx.torus9().euler_characteristic == 0
    assert fx.rp2_6().euler_characteristic == 1
    assert fx.annulus6().euler_characteristic == 0


def test_sphere_and_ball():
    assert is_sphere(fx.simplex_boundary(2), 2)
    assert not is_sphere(fx.torus7(), 2)
    assert is_sphere(fx.simplex_boundary(3), 3) is None
    assert is_ball(fx.full_simplex(3), 3)
    assert is_ball(fx.wheel(5), 2)
    assert not is_ball(fx.annulus6(), 2)
    assert is_ball(fx.full_simplex(4), 4) is None


def test_boundary_complex_examples():
    assert boundary_complex(fx.full_simplex(2)) == fx.simplex_boundary(1)
    assert len(boundary_complex(fx.octahedron())) == 0
    bd = boundary_complex(fx.annulus6())
    assert len(bd.components) == 2
    assert all(len(c) == 3 for c in bd.components)
    assert all(is_sphere(bd.induced(c), 1) for c in bd.components)
    with pytest.raises(ValueError):
        boundary_complex(fx.triangles_sharing_vertex())


def test_find_isomorphism_examples():
    O = fx.octahedron()
    f = find_isomorphism(O, O)
    assert f is not None and f.is_isomorphism()
    assert find_isomorphism(fx.cycle(5), fx.cycle(6)) is None
    C6 = fx.cycle(6)
    g = find_isomorphism(C6, C6, base=(0, 3))
    assert g.is_isomorphism() and g(0) == 3
    rotation = {i: (i + 3) % 6 for i in range(6)}
    assert any(h.vertex_map == rotation for h in iter_isomorphisms(C6, C6, base=(0, 3)))


def test_find_isomorphism_is_lexicographically_least():
    C6 = fx.cycle(6)
    maps = [tuple(h(v) for v in C6.vertices) for h in iter_isomorphisms(C6, C6, base=(0, 3))]
    assert maps == sorted(maps)
    g = find_isomorphism(C6, C6, base=(0, 3))
    assert tuple(g(v) for v in C6.vertices) == min(maps)


def test_isomorphism_inverse_composes_to_identity():
    T = fx.torus7()
    R = T.relabel({v: (3 * v + 1) % 7 for v in T.vertices})
    f = find_isomorphism(T, R)
    ident = f.then(f.inverse())
    assert all(ident(v) == v for v in T.vertices)


@given(complexes(max_vertices=5))
def test_automorphism_count_matches_permutations(K):
    assert automorphism_count(K) == len(all_isomorphisms(K, K))


@given(complexes(max_vertices=5), st.permutations(range(5)))
def test_isomorphism_found_for_relabeled_copy(K, perm):
    R = K.relabel({v: perm[v] for v in K.vertices})
    f = find_isomorphism(K, R)
    assert f is not None and f.is_isomorphism() and f.target == R


def test_known_automorphism_groups():
    assert automorphism_count(fx.cycle(6)) == 12
    assert automorphism_count(fx.octahedron()) == 48
    assert automorphism_count(fx.torus7()) == 42


def test_simplicial_map_flags():
    C6, C3 = fx.cycle(6), fx.cycle(3)
    f = SimplicialMap(C6, C3, {i: i % 3 for i in range(6)})
    assert f.is_simplicial() and f.is_nondegenerate() and not f.is_injective()
    g = SimplicialMap(fx.path(2), fx.point(), {0: 0, 1: 0})
    assert g.is_simplicial() and not g.is_nondegenerate()


def test_disjoint_union_and_diameter():
    U = disjoint_union([fx.cycle(3), fx.cycle(4)])
    assert len(U.components) == 2 and len(U.vertices) == 7
    assert diameter(U) == math.inf
    assert diameter(fx.octahedron()) == 2
