"""JSON documents for complexes, labelings, models, branched manifolds, immersions and words.

Every document is wrapped as ``{"kind": ..., "format_version": 1, "payload": ...}``;
bare payloads are accepted on input when the expected kind is known.
Vertex ids and labels are written as strings; strings spelling an integer are
read back as integers so that canonical output is stable.
"""
from __future__ import annotations

import json
import re
from pathlib import Path

from .branched import BranchedManifold, Immersion, LocalProjection
from .bundles import Matrix2Z, parse_word
from .complex import SimplicialComplex, SimplicialMap
from .labeling import Labeling, label_key
from .model import LocalModel, ModelSet

FORMAT_VERSION = 1
KINDS = ("complex", "labeling", "model", "model-set", "branched", "immersion",
         "build", "word", "matrix", "encoding", "report")

_INT = re.compile(r"-?(0|[1-9][0-9]*)\Z")


class FormatError(ValueError):
    """Malformed document; the message starts with a JSON-path location."""

    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}")
        self.where = where


def atom(s):
    if isinstance(s, bool) or s is None:
        return s
    if isinstance(s, int):
        return s
    if isinstance(s, str) and _INT.match(s):
        return int(s)
    return s


def text(x) -> str | None:
    return None if x is None else str(x)


def _vkey(v):
    return label_key(v)


def _sorted_simplex(s) -> list:
    return [text(v) for v in sorted(s, key=_vkey)]


def _sorted_simplices(simplices) -> list:
    rows = [sorted(s, key=_vkey) for s in simplices]
    rows.sort(key=lambda r: [_vkey(v) for v in r])
    return [[text(v) for v in r] for r in rows]


# -- serialization ------------------------------------------------------------------

def complex_to_json(K: SimplicialComplex) -> dict:
    return {"dim": K.dim,
            "vertices": [text(v) for v in sorted(K.vertices, key=_vkey)],
            "maximal_simplices": _sorted_simplices(K.facets)}


def labeling_to_json(L: Labeling) -> dict:
    vl = {text(v): text(l) for v, l in sorted(L.vertex_labels.items(), key=lambda p: _vkey(p[0]))}
    sl = [{"simplex": _sorted_simplex(s), "label": text(l)}
          for s, l in sorted(L.simplex_labels.items(), key=lambda p: [_vkey(v) for v in p[0]])]
    return {"vertex_labels": vl, "simplex_labels": sl}


def model_to_json(m: LocalModel) -> dict:
    out = {"complex": complex_to_json(m.complex), "center": text(m.center)}
    if m.labeling is not None:
        out["labeling"] = labeling_to_json(m.labeling)
    return out


def model_set_to_json(ms: ModelSet) -> dict:
    return {"dim": ms.dim, "models": [model_to_json(m) for m in ms.models]}


def branched_to_json(W: BranchedManifold) -> dict:
    projs = []
    for p in W.projections:
        projs.append({
            "domain_maximal": _sorted_simplices(p.domain.facets),
            "chart": complex_to_json(p.chart),
            "vertex_map": {text(v): text(p.vertex_map[v]) for v in sorted(p.vertex_map, key=_vkey)},
            "sheets": [_sorted_simplices(D.facets) for D in p.sheets],
        })
    return {"dim": W.dim, "complex": complex_to_json(W.complex), "projections": projs}


def immersion_to_json(imm: Immersion) -> dict:
    vm = imm.vertex_map
    return {"vertex_map": {text(v): text(vm[v]) for v in sorted(vm, key=_vkey)},
            "witnesses": {text(v): imm.witnesses[v] for v in sorted(imm.witnesses, key=_vkey)}}


def word_to_json(w) -> dict:
    return {"letters": list(parse_word(w))}


def matrix_to_json(m: Matrix2Z) -> dict:
    return {"rows": m.rows}


def envelope(kind: str, payload, **extra) -> dict:
    doc = {"kind": kind, "format_version": FORMAT_VERSION}
    doc.update(extra)
    doc["payload"] = payload
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# -- parsing ---------------------------------------------------------------------

def _need(obj, key, where, typ=None):
    if not isinstance(obj, dict):
        raise FormatError(where, "expected an object")
    if key not in obj:
        raise FormatError(where, f"missing field {key!r}")
    val = obj[key]
    if typ is not None and not isinstance(val, typ):
        raise FormatError(f"{where}.{key}", f"expected {typ.__name__ if isinstance(typ, type) else 'value'}")
    return val


def _vertex(x, where):
    if not isinstance(x, (str, int)) or isinstance(x, bool):
        raise FormatError(where, "vertex ids must be strings")
    return atom(x)


def _simplex_list(rows, where) -> list:
    if not isinstance(rows, list):
        raise FormatError(where, "expected a list of simplices")
    out = []
    for i, r in enumerate(rows):
        if not isinstance(r, list) or not r:
            raise FormatError(f"{where}[{i}]", "expected a nonempty list of vertex ids")
        s = [_vertex(v, f"{where}[{i}][{j}]") for j, v in enumerate(r)]
        if len(set(s)) != len(s):
            raise FormatError(f"{where}[{i}]", "repeated vertex in simplex")
        out.append(s)
    return out


def complex_from_json(obj, where="$") -> SimplicialComplex:
    verts = [_vertex(v, f"{where}.vertices[{i}]")
             for i, v in enumerate(_need(obj, "vertices", where, list))]
    simplices = _simplex_list(_need(obj, "maximal_simplices", where), f"{where}.maximal_simplices")
    vs = set(verts)
    for i, s in enumerate(simplices):
        for j, v in enumerate(s):
            if v not in vs:
                raise FormatError(f"{where}.maximal_simplices[{i}][{j}]", f"unknown vertex {v!r}")
    try:
        K = SimplicialComplex(simplices, vertices=verts)
    except TypeError as e:
        raise FormatError(where, f"vertex ids are not comparable: {e}") from None
    if "dim" in obj and obj["dim"] != K.dim:
        raise FormatError(f"{where}.dim", f"declared {obj['dim']} but simplices give {K.dim}")
    return K


def labeling_from_json(obj, where="$") -> Labeling:
    vl = obj.get("vertex_labels", {}) if isinstance(obj, dict) else None
    if not isinstance(vl, dict):
        raise FormatError(f"{where}.vertex_labels", "expected an object")
    vlab = {_vertex(k, f"{where}.vertex_labels"): atom(v) for k, v in vl.items()}
    sl = obj.get("simplex_labels", [])
    if not isinstance(sl, list):
        raise FormatError(f"{where}.simplex_labels", "expected a list")
    slab = {}
    for i, item in enumerate(sl):
        w = f"{where}.simplex_labels[{i}]"
        s = _simplex_list([_need(item, "simplex", w)], f"{w}.simplex")[0]
        slab[tuple(s)] = atom(_need(item, "label", w))
    return Labeling(vlab, slab)


def model_from_json(obj, where="$") -> LocalModel:
    K = complex_from_json(_need(obj, "complex", where), f"{where}.complex")
    c = _vertex(_need(obj, "center", where), f"{where}.center")
    if (c,) not in K.simplices:
        raise FormatError(f"{where}.center", f"center {c!r} is not a vertex of the model")
    lab = None
    if obj.get("labeling") is not None:
        lab = labeling_from_json(obj["labeling"], f"{where}.labeling")
    return LocalModel(K, c, lab)


def model_set_from_json(obj, where="$") -> ModelSet:
    models = _need(obj, "models", where, list)
    ms = [model_from_json(m, f"{where}.models[{i}]") for i, m in enumerate(models)]
    try:
        return ModelSet(tuple(ms), obj.get("dim"))
    except ValueError as e:
        raise FormatError(where, str(e)) from None


def branched_from_json(obj, where="$") -> BranchedManifold:
    K = complex_from_json(_need(obj, "complex", where), f"{where}.complex")
    projs = []
    for i, p in enumerate(_need(obj, "projections", where, list)):
        w = f"{where}.projections[{i}]"
        dom = SimplicialComplex(_simplex_list(_need(p, "domain_maximal", w), f"{w}.domain_maximal"))
        chart = complex_from_json(_need(p, "chart", w), f"{w}.chart")
        vm = {_vertex(k, f"{w}.vertex_map"): _vertex(v, f"{w}.vertex_map.{k}")
              for k, v in _need(p, "vertex_map", w, dict).items()}
        sheets = tuple(SimplicialComplex(_simplex_list(s, f"{w}.sheets[{j}]"))
                       for j, s in enumerate(_need(p, "sheets", w, list)))
        projs.append(LocalProjection(dom, chart, vm, sheets))
    return BranchedManifold(K, tuple(projs), obj.get("dim", K.dim))


def immersion_from_json(obj, source: SimplicialComplex, target: BranchedManifold,
                        where="$") -> Immersion:
    vm = {_vertex(k, f"{where}.vertex_map"): _vertex(v, f"{where}.vertex_map.{k}")
          for k, v in _need(obj, "vertex_map", where, dict).items()}
    wit = {_vertex(k, f"{where}.witnesses"): int(v) for k, v in obj.get("witnesses", {}).items()}
    return Immersion(SimplicialMap(source, target.complex, vm), wit)


def word_from_json(obj, where="$") -> tuple:
    letters = _need(obj, "letters", where, list)
    try:
        return parse_word(letters)
    except ValueError as e:
        raise FormatError(f"{where}.letters", str(e)) from None


def matrix_from_json(obj, where="$") -> Matrix2Z:
    rows = _need(obj, "rows", where, list)
    ok = (len(rows) == 2 and all(isinstance(r, list) and len(r) == 2 for r in rows)
          and all(isinstance(x, int) and not isinstance(x, bool) for r in rows for x in r))
    if not ok:
        raise FormatError(f"{where}.rows", "expected [[int, int], [int, int]]")
    return Matrix2Z.from_rows(rows)


PARSERS = {
    "complex": complex_from_json,
    "labeling": labeling_from_json,
    "model": model_from_json,
    "model-set": model_set_from_json,
    "branched": branched_from_json,
    "word": word_from_json,
    "matrix": matrix_from_json,
}


def unwrap(doc, expected: str | None = None, where: str = "$"):
    """Return ``(kind, payload, where)`` for an enveloped or bare document."""
    if isinstance(doc, dict) and "payload" in doc and "kind" in doc:
        kind = doc["kind"]
        if kind not in KINDS:
            raise FormatError(f"{where}.kind", f"unknown kind {kind!r}")
        version = doc.get("format_version")
        if version != FORMAT_VERSION:
            raise FormatError(f"{where}.format_version", f"unsupported version {version!r}")
        if expected is not None and kind != expected:
            raise FormatError(f"{where}.kind", f"expected {expected!r}, got {kind!r}")
        return kind, doc["payload"], f"{where}.payload"
    if expected is None:
        raise FormatError(where, "bare payload without a kind")
    return expected, doc, where


def parse(doc, expected: str | None = None):
    kind, payload, where = unwrap(doc, expected)
    if kind not in PARSERS:
        raise FormatError("$.kind", f"documents of kind {kind!r} cannot be read back")
    return kind, PARSERS[kind](payload, where)


SERIALIZERS = {
    SimplicialComplex: ("complex", complex_to_json),
    Labeling: ("labeling", labeling_to_json),
    LocalModel: ("model", model_to_json),
    ModelSet: ("model-set", model_set_to_json),
    BranchedManifold: ("branched", branched_to_json),
    Matrix2Z: ("matrix", matrix_to_json),
}


def serialize(obj) -> dict:
    kind, fn = SERIALIZERS[type(obj)]
    return envelope(kind, fn(obj))


def read_json(path: str | Path):
    p = Path(path)
    try:
        raw = p.read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(str(p), f"cannot read file: {e.strerror}") from None
    try:
        return json.loads(raw)
    except json.JSONDecodeError as e:
        raise FormatError(f"{p}:{e.lineno}:{e.colno}", e.msg) from None
