import json
import subprocess
import sys

import pytest

from lcdkit import fixtures as fx
from lcdkit import io as jio
from lcdkit.branched import BranchedManifold
from lcdkit.cli import main
from lcdkit.labeling import Labeling
from lcdkit.model import LocalModel


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    doc = json.loads(out) if out.strip() else None
    return code, doc, err


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(jio.dumps(doc))
    return str(p)


@pytest.mark.parametrize("obj", [
    fx.torus7(), fx.annulus6(), fx.point(),
    Labeling({0: 1, 1: "x"}, {(0, 1): "e"}),
    LocalModel(fx.wheel(5), 0, Labeling({0: "hub"})),
    fx.cyclic_path_models(3),
    BranchedManifold.from_manifold(fx.cycle(4)),
], ids=lambda o: type(o).__name__)
def test_serialization_round_trip(obj):
    text1 = jio.dumps(jio.serialize(obj))
    _, back = jio.parse(json.loads(text1))
    text2 = jio.dumps(jio.serialize(back))
    assert text1 == text2
    assert back == obj


def test_string_vertices_survive():
    K = fx.COMPLEXES["triangle"]().relabel({0: "a", 1: "b", 2: "c"})
    _, back = jio.parse(json.loads(jio.dumps(jio.serialize(K))))
    assert back == K


def test_bare_payload_and_errors():
    payload = jio.complex_to_json(fx.cycle(3))
    assert jio.parse(payload, "complex")[1] == fx.cycle(3)
    with pytest.raises(jio.FormatError, match=r"\$\.maximal_simplices\[0\]\[1\]"):
        jio.parse({"vertices": ["0"], "maximal_simplices": [["0", "1"]]}, "complex")
    with pytest.raises(jio.FormatError, match="format_version"):
        jio.parse({"kind": "complex", "format_version": 9, "payload": payload})


def test_bundle_eval(capsys):
    code, doc, _ = run(capsys, "bundle", "eval", "a2", "a2")
    assert code == 0 and doc["payload"]["rows"] == [[1, 0], [0, 1]]


def test_bundle_factor_and_certify(capsys):
    code, doc, _ = run(capsys, "bundle", "factor", "2", "1", "1", "1")
    assert code == 0
    code, doc2, _ = run(capsys, "bundle", "eval", *doc["payload"]["letters"])
    assert doc2["payload"]["rows"] == [[2, 1], [1, 1]]
    code, doc, _ = run(capsys, "bundle", "factor", "2", "0", "0", "1")
    assert code == 2
    code, doc, _ = run(capsys, "bundle", "certify", "a1", "a2")
    assert code == 0 and doc["payload"]["monodromy"] == [[1, -1], [0, -1]]


def test_check_modeled(capsys):
    code, doc, err = run(capsys, "check-modeled", "fixture:octahedron", "--models", "fixture:wheel6")
    assert code == 1 and doc["payload"]["answer"] == "not modeled"
    code, doc, _ = run(capsys, "check-modeled", "fixture:torus7", "--models", "fixture:wheel6")
    assert code == 0


def test_verify_equivalence_cli(capsys):
    code, doc, err = run(capsys, "verify-equivalence", "--models", "fixture:cyclic-path3",
                         "--witnesses", "fixture:cycle3", "fixture:cycle6", "--max-vertices", "9")
    assert code == 0
    p = doc["payload"]
    assert p["modeled"] == p["immersed"] == ["C3", "C6", "C9"]
    assert doc["parameters"]["max_vertices"] == 9 and doc["parameters"]["d"] == 3


def test_validate_and_malformed(capsys, tmp_path):
    code, doc, _ = run(capsys, "validate", "fixture:triangles-sharing-vertex")
    assert code == 1 and doc["payload"]["status"] == "not-manifold"
    bad = write(tmp_path, "bad.json", {"kind": "complex", "format_version": 1,
                                       "payload": {"vertices": ["0"], "maximal_simplices": [["0", "1"]]}})
    code, _, err = run(capsys, "validate", bad)
    assert code == 2 and "$.payload.maximal_simplices[0][1]" in err
    broken = tmp_path / "broken.json"
    broken.write_text("{ not json")
    code, _, err = run(capsys, "validate", str(broken))
    assert code == 2 and "broken.json:1:" in err


def test_subdivide_color_geographies(capsys, tmp_path):
    code, doc, _ = run(capsys, "subdivide", "fixture:triangle", "--standard", "0,1,2", "--N", "1")
    assert code == 0 and len(doc["payload"]["vertices"]) == 10
    code, doc, _ = run(capsys, "subdivide", "fixture:triangle", "--chain", "0,1,2", "0,1", "3")
    assert len(doc["payload"]["maximal_simplices"]) == 7
    code, doc, _ = run(capsys, "color", "fixture:cycle6", "--d", "1")
    col = write(tmp_path, "col.json", doc)
    code, doc, _ = run(capsys, "geographies", "fixture:cycle6", "--d", "1", "--coloring", col)
    assert code == 0 and doc["payload"]["count"] == 3


def test_encode_decode(capsys, tmp_path):
    T = fx.torus7()
    lab = write(tmp_path, "lab.json", jio.serialize(Labeling({v: v % 3 for v in T.vertices})))
    code, enc, _ = run(capsys, "encode", "fixture:torus7", "--labeling", lab)
    assert code == 0
    encp = write(tmp_path, "enc.json", enc)
    code, doc, _ = run(capsys, "decode", encp)
    assert code == 0 and doc["payload"]["decoded"]
    K = jio.complex_from_json(doc["payload"]["complex"])
    assert K.f_vector == T.f_vector
    enc["payload"]["complex"] = jio.complex_to_json(fx.octahedron())
    code, doc, _ = run(capsys, "decode", write(tmp_path, "oct.json", enc))
    assert code == 1


def test_build_and_immerse(capsys, tmp_path):
    code, build, _ = run(capsys, "build-universal", "--models", "fixture:cyclic-path3",
                         "--witnesses", "fixture:cycle3", "fixture:cycle6")
    assert code == 0 and build["payload"]["geographies"] == 9
    bp = write(tmp_path, "build.json", build)
    code, doc, _ = run(capsys, "immerse", "fixture:cycle9", "--into", bp)
    assert code == 0 and doc["kind"] == "immersion"
    code, doc, _ = run(capsys, "immerse", "fixture:cycle4", "--into", bp)
    assert code == 1


def test_enumerate_and_fixture(capsys):
    code, doc, _ = run(capsys, "enumerate", "--models", "fixture:wheel4", "--max-vertices", "6")
    assert code == 0 and doc["payload"]["names"] == ["octahedron"]
    code, doc, _ = run(capsys, "fixture", "torus7")
    assert doc["kind"] == "complex" and doc["payload"]["dim"] == 2
    code, _, err = run(capsys, "fixture", "nope")
    assert code == 2


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "lcdkit.cli", "bundle", "eval", "a1", "a1"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["payload"]["rows"] == [[1, 2], [0, 1]]
