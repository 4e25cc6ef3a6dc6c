"""Acceptance criteria, one test each.

Every test prints a single ``ACCEPTANCE <n> PASS|FAIL`` line with its runtime,
even when pytest captures output.
"""
import itertools
import random
import time

import pytest

from lcdkit import fixtures as fx
from lcdkit.branched import BranchedManifold, find_immersion, is_immersion, validate_branched
from lcdkit.bundles import LETTERS, GENERATORS, Matrix2Z, circle_immersion, eval_word, factor_matrix, train_track
from lcdkit.complex import SimplicialMap, automorphism_count, find_isomorphism, neighborhood
from lcdkit.labeling import (
    Labeling,
    compute_d_coloring,
    geographize,
    geography_transport,
    is_d_coloring,
)
from lcdkit.model import ModelSet, is_modeled_on
from lcdkit.subdivision import (
    block_intersection_violations,
    build_family,
    decode,
    encode,
    expected_boundary_degree,
    standard_subdivide,
)
from lcdkit.universal import build_universal, verify_equivalence

from oracles import (
    all_immersions,
    color_preserving_isomorphisms,
    is_d_coloring_literal,
    is_immersion_definitional,
    modeled_bruteforce,
)
from test_branched import free_end_track, wedge_track, y_track


@pytest.fixture
def criterion(capsys):
    """Run a check, print one pass/fail line, then re-raise any failure."""
    def run(label, limit, check):
        t0 = time.perf_counter()
        err = None
        try:
            check()
        except AssertionError as e:
            err = e
        dt = time.perf_counter() - t0
        if err is None and limit is not None and dt >= limit:
            err = AssertionError(f"took {dt:.2f} s, limit {limit} s")
        status = "PASS" if err is None else "FAIL"
        bound = f" (limit {limit} s)" if limit is not None else ""
        with capsys.disabled():
            print(f"\nACCEPTANCE {label} {status} in {dt:.2f} s{bound}" + (f": {err}" if err else ""))
        if err is not None:
            raise err
    return run


def test_1_standard_subdivision(criterion):
    def check():
        for n in (2, 3):
            for N in range(1, 6):
                sigma = tuple(range(n + 1))
                R = standard_subdivide(fx.full_simplex(n), sigma, N).result
                for j in sigma:
                    want = n + 1 + sum(N + i for i in range(n + 1) if i != j)
                    assert len(R.adjacency[j]) == want == expected_boundary_degree(n, N, j)
                interior = max(len(R.adjacency[v]) for v in R.vertices if v not in sigma)
                assert interior == 2 * n + 2 < 2 * n + 3
                assert automorphism_count(R, limit=2) == 1, (n, N)
        R = standard_subdivide(fx.full_simplex(2), (0, 1, 2), 1).result
        assert sorted(len(R.adjacency[j]) for j in (0, 1, 2)) == [6, 7, 8]
    criterion("1 standard subdivision certificates", 5, check)


def _codec_cases():
    s = fx.full_simplex(2)
    yield s, Labeling({0: "x", 1: "y", 2: "z"}, {(0, 1, 2): "t"})
    T = fx.torus7()
    for classes in (1, 2):
        yield T, Labeling({v: v % 2 for v in T.vertices},
                          {f: i % classes for i, f in enumerate(T.top_simplices)})


def test_2_label_codec(criterion):
    def check():
        for M, lab in _codec_cases():
            fam = build_family([(M, lab)])
            rec = encode(M, lab, fam)
            assert not block_intersection_violations(rec)
            K, lab2 = decode(rec.result, fam)
            assert find_isomorphism(M, K, labels=(lab, lab2)) is not None
    criterion("2 label codec round trip", 10, check)


def test_3_coloring_and_geographies(criterion):
    rng = random.Random(0)

    def check():
        for name, make in fx.COMPLEXES.items():
            K = make()
            if len(K.vertices) > 30:
                continue
            for d in (1, 2):
                col = compute_d_coloring(K, d)
                c = col.colors
                assert is_d_coloring(K, c, d) and is_d_coloring_literal(K, c, d)
                for _ in range(5):
                    k = rng.randint(1, len(K.vertices))
                    rand = {v: rng.randrange(k) for v in K.vertices}
                    assert is_d_coloring(K, rand, d) == is_d_coloring_literal(K, rand, d), name
                gl, _ = geographize(K, col, d)
                for u, v in itertools.combinations_with_replacement(K.vertices, 2):
                    isos = color_preserving_isomorphisms(neighborhood(K, u, d), c,
                                                         neighborhood(K, v, d), c, u, v)
                    assert (gl[u] == gl[v]) == bool(isos), (name, d, u, v)
                    if isos:
                        assert len(isos) == 1
                        assert geography_transport(K, gl, u, v).vertex_map == isos[0]
    criterion("3 coloring and geography correctness", 10, check)


def test_4_branched_validation(criterion):
    def check():
        for M in (fx.cycle(5), fx.octahedron(), fx.torus7(), fx.rp2_6(), fx.torus9()):
            assert validate_branched(BranchedManifold.from_manifold(M)).ok
        assert validate_branched(wedge_track()).ok
        for kw, kind in (({"drop_sheet": True}, "sheet-union"),
                         ({"bad_compat": True}, "compatibility"),
                         ({"bad_chart": True}, "chart-not-ball")):
            rep = validate_branched(wedge_track(**kw))
            assert kind in rep.kinds(), (kind, rep.kinds())
    criterion("4 branched manifold validation", None, check)


def test_5_main_equivalence(criterion):
    def check():
        ms = fx.cyclic_path_models(3)
        rep = verify_equivalence(ms, build_universal(ms, [fx.cycle(3), fx.cycle(6)]), 12)
        assert rep.modeled == rep.immersed == ["C3", "C6", "C9", "C12"], rep.summary()
        assert rep.agrees

        ms = ModelSet((fx.wheel_model(4),))
        rep = verify_equivalence(ms, build_universal(ms, [fx.octahedron()]), 6)
        assert rep.modeled == rep.immersed == ["octahedron"], rep.summary()
        assert rep.agrees

        W = BranchedManifold.from_manifold(fx.cycle(3))
        got = [k for k in range(3, 16) if find_immersion(fx.cycle(k), W) is not None]
        assert got == [3, 6, 9, 12, 15]
    criterion("5 universal branched manifold equivalence", 60, check)


def _small_corpus():
    for name, make in fx.COMPLEXES.items():
        K = make()
        if len(K.vertices) <= 8:
            yield name, K


def _targets():
    for M in (fx.cycle(3), fx.cycle(4), fx.octahedron(), fx.torus7()):
        yield BranchedManifold.from_manifold(M)
    yield wedge_track()
    yield y_track()
    yield free_end_track()
    yield build_universal(fx.cyclic_path_models(3), [fx.cycle(3), fx.cycle(6)]).W


def test_6_oracle_agreement(criterion):
    def check():
        corpus = list(_small_corpus())
        for ms_name, make in fx.MODEL_SETS.items():
            ms = make()
            for name, K in corpus:
                got = is_modeled_on(K, ms) is not None
                assert got == modeled_bruteforce(K, ms), (ms_name, name)
        for W in _targets():
            for name, M in corpus:
                if M.dim != W.dim:
                    continue
                found = find_immersion(M, W)
                ref = all_immersions(M, W)
                assert (found is not None) == bool(ref), name
                if found is not None:
                    assert is_immersion_definitional(M, W, found.vertex_map)
                for f in ref:
                    assert is_immersion(M, W, SimplicialMap(M, W.complex, f)) is not None, name
    criterion("6 oracle agreement", None, check)


def test_7_bundle_algebra(criterion):
    def check():
        R = range(-10, 11)
        for a, b, c, d in itertools.product(R, R, R, R):
            if a * d - b * c in (1, -1):
                m = Matrix2Z(a, b, c, d)
                assert eval_word(factor_matrix(m)) == m, m
        I = Matrix2Z.identity()
        assert GENERATORS["a2"] @ GENERATORS["a2"] == I
        assert GENERATORS["a3"] @ GENERATORS["a3"] == I
        T = train_track()
        assert validate_branched(T).ok
        for n in range(1, 7):
            for w in itertools.product(LETTERS, repeat=n):
                imm = circle_immersion(w, T)
                assert len(imm.map.source.vertices) == 3 * n
                assert is_immersion(imm.map.source, T, imm.map) is not None, w
    criterion("7 bundle algebra", 30, check)
