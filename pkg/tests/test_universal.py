import pytest

from lcdkit import fixtures as fx
from lcdkit.branched import BranchedManifold, find_immersion, is_immersion, validate_branched
from lcdkit.complex import find_isomorphism, neighborhood
from lcdkit.labeling import Coloring
from lcdkit.model import ModelSet, star_models
from lcdkit.universal import (
    SaturationError,
    build_universal,
    canonical_immersion,
    default_radius,
    models_from_branched,
    verify_equivalence,
)


@pytest.fixture(scope="module")
def cyclic_build():
    return build_universal(fx.cyclic_path_models(3), [fx.cycle(3), fx.cycle(6)])


def test_cyclic_build_shape(cyclic_build):
    b = cyclic_build
    assert b.d == 3
    W = b.W.complex
    assert len(b.G) == len(W.vertices) == 9
    comps = sorted(len(c) for c in W.components)
    assert comps == [3, 6]
    assert validate_branched(b.W).ok


def test_psi_matches_center_colors(cyclic_build):
    b = cyclic_build
    for k, (M, imm) in enumerate(zip(b.witnesses, b.theta)):
        for v in M.vertices:
            assert b.psi[imm.vertex_map[v]] == b.coloring.colors[(k, v)]


def test_sheets_are_color_stars(cyclic_build):
    b = cyclic_build
    for x, p in zip(b.W.complex.vertices, b.W.projections):
        for D in p.sheets:
            assert D.relabel(b.psi) == p.chart


def test_every_W_simplex_is_a_witness_image(cyclic_build):
    b = cyclic_build
    images = set()
    for M, imm in zip(b.witnesses, b.theta):
        images |= imm.map.image().simplices
    assert images == b.W.complex.simplices


def test_canonical_immersion(cyclic_build):
    b = cyclic_build
    imm6 = canonical_immersion(b, fx.cycle(6))
    assert is_immersion(fx.cycle(6), b.W, imm6.map) is not None
    imm3 = canonical_immersion(b, fx.cycle(3))
    assert len(set(imm3.vertex_map.values())) == 3


def test_canonical_immersion_unsaturated():
    ms = ModelSet((fx.path3_model(),))
    b = build_universal(ms, [fx.cycle(3)])
    with pytest.raises(SaturationError, match="witness set not saturated"):
        canonical_immersion(b, fx.cycle(4))


def test_canonical_immersion_of_relabeled_witness():
    ms = ModelSet((fx.wheel_model(4),))
    b = build_universal(ms, [fx.octahedron()])
    O = fx.octahedron().relabel({0: 10, 1: 11, 2: 12, 3: 13, 4: 14, 5: 15})
    imm = canonical_immersion(b, O)
    assert len(set(imm.vertex_map.values())) == 6


def test_geography_overlap_claim(cyclic_build):
    b = cyclic_build
    from lcdkit.complex import disjoint_union
    from lcdkit.labeling import geographize
    Q = disjoint_union(b.witnesses)
    cmap = b.coloring.colors
    gl, _ = geographize(Q, b.coloring, b.d)
    for u, v in Q.edges:
        big = gl[v].chart
        small = neighborhood(Q, u, b.d - 1).relabel(cmap)
        assert small.issubcomplex(big)


def test_octahedron_build_is_octahedron():
    b = build_universal(ModelSet((fx.wheel_model(4),)), [fx.octahedron()])
    assert find_isomorphism(b.W.complex, fx.octahedron()) is not None


def test_wheel6_build_with_two_tori():
    b = build_universal(ModelSet((fx.wheel_model(6),)), [fx.torus7(), fx.torus9()])
    assert validate_branched(b.W).ok
    for M, imm in zip(b.witnesses, b.theta):
        assert is_immersion(M, b.W, imm.map) is not None


def test_star_models_with_injective_coloring_recover_manifold():
    M = fx.octahedron()
    ms = star_models(M)
    b = build_universal(ms, [M], d=4)
    assert find_isomorphism(b.W.complex, M) is not None


def test_witness_must_be_modeled():
    with pytest.raises(ValueError):
        build_universal(ModelSet((fx.wheel_model(6),)), [fx.octahedron()])


def test_radius_rules():
    ms = ModelSet((fx.wheel_model(4),))
    assert default_radius(ms) == 3
    with pytest.raises(ValueError):
        build_universal(ms, [fx.octahedron()], d=2)
    assert default_radius(ModelSet((), dim=1)) == 2


def test_models_from_branched_examples():
    W = BranchedManifold.from_manifold(fx.cycle(3))
    wit = [(fx.cycle(3), find_immersion(fx.cycle(3), W)), (fx.cycle(6), find_immersion(fx.cycle(6), W))]
    ms = models_from_branched(W, wit)
    assert len(ms) == 3
    assert all(m.labeling.alphabet <= set(W.complex.vertices) for m in ms)
    O = BranchedManifold.from_manifold(fx.octahedron())
    ms = models_from_branched(O, [(fx.octahedron(), find_immersion(fx.octahedron(), O))])
    assert len(ms) == 6
    assert len(models_from_branched(O, [])) == 0


def test_models_from_branched_rejects_bad_immersion():
    from lcdkit.branched import Immersion
    from lcdkit.complex import SimplicialMap
    W = BranchedManifold.from_manifold(fx.cycle(3))
    bad = Immersion(SimplicialMap(fx.cycle(4), W.complex, {0: 0, 1: 1, 2: 0, 3: 1}))
    with pytest.raises(ValueError):
        models_from_branched(W, [(fx.cycle(4), bad)])


def test_models_from_branched_then_modeled_equals_coverings():
    W = BranchedManifold.from_manifold(fx.cycle(3))
    wit = [(fx.cycle(3), find_immersion(fx.cycle(3), W))]
    ms = models_from_branched(W, wit)
    from lcdkit.model import is_modeled_on
    for k in range(3, 13):
        assert (is_modeled_on(fx.cycle(k), ms) is not None) == (find_immersion(fx.cycle(k), W) is not None)


def test_verify_equivalence_examples(cyclic_build):
    rep = verify_equivalence(fx.cyclic_path_models(3), cyclic_build, 9)
    assert rep.modeled == rep.immersed == ["C3", "C6", "C9"]
    assert rep.agrees
    ms = ModelSet((fx.wheel_model(4),))
    rep = verify_equivalence(ms, build_universal(ms, [fx.octahedron()]), 6)
    assert rep.modeled == rep.immersed == ["octahedron"]
    empty = ModelSet((), dim=1)
    rep = verify_equivalence(empty, build_universal(empty, []), 8)
    assert rep.modeled == rep.immersed == [] and rep.agrees


def test_verify_equivalence_dimension_check():
    ms = ModelSet((), dim=3)
    with pytest.raises(ValueError):
        verify_equivalence(ms, build_universal(ms, []), 5)


def test_coloring_argument_checked(cyclic_build):
    with pytest.raises(ValueError):
        canonical_immersion(cyclic_build, fx.cycle(6), coloring=Coloring({i: 0 for i in range(6)}, 3))
