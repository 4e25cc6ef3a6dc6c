"""Command-line front end.

Inputs are JSON documents (a path, ``-`` for stdin) or named fixtures written
``fixture:NAME``.  Exit status: 0 success or affirmative answer, 1 negative
answer, 2 input error.  All algorithms are deterministic; the LCDKIT_SEED
environment variable is reserved and ignored.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import fixtures
from . import io as jio
from .branched import BranchedManifold, find_immersion, validate_branched
from .bundles import Matrix2Z, bundle_certificate, eval_word, factor_matrix, parse_word
from .complex import SimplicialComplex, is_combinatorial_manifold
from .labeling import Labeling, compute_d_coloring, geographize
from .model import ModelSet, ModelValidity, enumerate_modeled, is_modeled_on, validate_local_model
from .subdivision import (
    DecodeError,
    build_family,
    chain_subdivide,
    decode,
    encode,
    family_from_classes,
    stellar_subdivide,
    standard_subdivide,
)
from .universal import build_universal, manifold_name, verify_equivalence

log = logging.getLogger("lcdkit")

OK, NEGATIVE, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


# -- input helpers -------------------------------------------------------------

def _read(source: str):
    if source == "-":
        try:
            return json.load(sys.stdin)
        except json.JSONDecodeError as e:
            raise jio.FormatError(f"<stdin>:{e.lineno}:{e.colno}", e.msg) from None
    return jio.read_json(source)


def _fixture(source: str, table: dict, what: str):
    name = source.split(":", 1)[1]
    if name not in table:
        raise InputError(f"{source}: unknown {what} fixture (known: {', '.join(sorted(table))})")
    return table[name]()


def load_complex(source: str) -> SimplicialComplex:
    if source.startswith("fixture:"):
        return _fixture(source, fixtures.COMPLEXES, "complex")
    return jio.parse(_read(source), "complex")[1]


def load_model_set(source: str) -> ModelSet:
    if source.startswith("fixture:"):
        return _fixture(source, fixtures.MODEL_SETS, "model-set")
    doc = _read(source)
    kind, obj = jio.parse(doc, None if isinstance(doc, dict) and "kind" in doc else "model-set")
    if kind == "model":
        return ModelSet((obj,))
    if kind != "model-set":
        raise jio.FormatError("$.kind", f"expected a model or model-set, got {kind!r}")
    return obj


def load_labeling(source: str | None) -> Labeling | None:
    if source is None:
        return None
    return jio.parse(_read(source), "labeling")[1]


def load_branched(source: str) -> BranchedManifold:
    """A branched document, the ``W`` of a build document, or a complex read as a manifold."""
    if source.startswith("fixture:"):
        return BranchedManifold.from_manifold(load_complex(source))
    doc = _read(source)
    kind, payload, where = jio.unwrap(doc, None if isinstance(doc, dict) and "kind" in doc else "branched")
    if kind == "build":
        return jio.branched_from_json(jio._need(payload, "W", where), f"{where}.W")
    if kind == "complex":
        return BranchedManifold.from_manifold(jio.complex_from_json(payload, where))
    if kind != "branched":
        raise jio.FormatError("$.kind", f"expected branched, build or complex, got {kind!r}")
    return jio.branched_from_json(payload, where)


def parse_simplex(text: str) -> tuple:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise InputError(f"empty simplex {text!r}")
    return tuple(sorted(jio.atom(p) for p in parts))


def _emit(args, doc, human: str | None = None) -> None:
    out = jio.dumps(doc)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    if human:
        print(human, file=sys.stderr)


def _report(args, payload: dict, parameters: dict, human: str | None = None) -> None:
    _emit(args, jio.envelope("report", payload, command=args.command, parameters=parameters), human)


# -- commands -------------------------------------------------------------------

def cmd_validate(args) -> int:
    if args.input.startswith("fixture:"):
        kind, obj = "complex", load_complex(args.input)
    else:
        kind, obj = jio.parse(_read(args.input), args.kind)
    if kind == "complex":
        status = is_combinatorial_manifold(obj)
        _report(args, {"kind": kind, "status": status.value, "f_vector": list(obj.f_vector)},
                {}, status.value)
        return OK if status.is_manifold else NEGATIVE
    if kind == "model":
        v = validate_local_model(obj)
        _report(args, {"kind": kind, "validity": v.value}, {}, v.value)
        return OK if v is ModelValidity.VALID else NEGATIVE
    if kind == "model-set":
        vs = [validate_local_model(m).value for m in obj.models]
        _report(args, {"kind": kind, "validity": vs}, {})
        return OK if all(v == "valid" for v in vs) else NEGATIVE
    if kind == "branched":
        rep = validate_branched(obj)
        _report(args, {"kind": kind, "ok": rep.ok,
                       "violations": [{"kind": v.kind, "projection": v.projection, "detail": v.detail}
                                      for v in rep.violations],
                       "unknowns": rep.unknowns}, {}, "ok" if rep.ok else "invalid")
        return OK if rep.ok else NEGATIVE
    raise InputError(f"cannot validate documents of kind {kind!r}")


def cmd_subdivide(args) -> int:
    K = load_complex(args.input)
    if args.stellar:
        rec = stellar_subdivide(K, parse_simplex(args.stellar))
        params = {"stellar": args.stellar}
    elif args.chain:
        sigma, tau, k = args.chain
        rec = chain_subdivide(K, parse_simplex(sigma), parse_simplex(tau), int(k))
        params = {"chain": [sigma, tau, int(k)]}
    else:
        if args.N is None:
            raise InputError("--standard needs --N")
        rec = standard_subdivide(K, parse_simplex(args.standard), args.N)
        params = {"standard": args.standard, "N": args.N}
    _emit(args, jio.envelope("complex", jio.complex_to_json(rec.result), parameters=params))
    return OK


def cmd_encode(args) -> int:
    K = load_complex(args.input)
    lab = load_labeling(args.labeling)
    family = build_family([(K, lab)])
    rec = encode(K, lab, family)
    fam = {"n": family.n,
           "classes": [{"vertex_labels": [jio.text(l) for l in e.vertex_labels],
                        "simplex_label": jio.text(e.simplex_label), "N": e.N}
                       for e in family.entries]}
    _emit(args, jio.envelope("encoding", {"complex": jio.complex_to_json(rec.result), "family": fam},
                             parameters={"N": [e.N for e in family.entries],
                                         "threshold": family.threshold}))
    return OK


def _family_from_json(obj, where):
    n = jio._need(obj, "n", where, int)
    classes, Ns = [], []
    for i, c in enumerate(jio._need(obj, "classes", where, list)):
        w = f"{where}.classes[{i}]"
        classes.append((tuple(jio.atom(l) for l in jio._need(c, "vertex_labels", w, list)),
                        jio.atom(c.get("simplex_label"))))
        Ns.append(c.get("N"))
    try:
        family = family_from_classes(n, classes)
    except ValueError as e:
        raise jio.FormatError(where, str(e)) from None
    for e in family.entries:
        want = Ns[classes.index(e.key)]
        if want is not None and want != e.N:
            raise jio.FormatError(where, f"class {e.key!r} declares N={want}, schedule gives {e.N}")
    return family


def cmd_decode(args) -> int:
    kind, payload, where = jio.unwrap(_read(args.input), "encoding")
    Mstar = jio.complex_from_json(jio._need(payload, "complex", where), f"{where}.complex")
    family = _family_from_json(jio._need(payload, "family", where), f"{where}.family")
    try:
        K, lab = decode(Mstar, family)
    except DecodeError as e:
        _report(args, {"decoded": False, "reason": str(e)}, {"n": family.n}, f"not decodable: {e}")
        return NEGATIVE
    _report(args, {"decoded": True, "complex": jio.complex_to_json(K),
                   "labeling": jio.labeling_to_json(lab)}, {"n": family.n})
    return OK


def cmd_color(args) -> int:
    K = load_complex(args.input)
    col = compute_d_coloring(K, args.d)
    _emit(args, jio.envelope("labeling", jio.labeling_to_json(col.as_labeling()),
                             parameters={"d": args.d, "colors": len(col.palette)}))
    return OK


def cmd_geographies(args) -> int:
    K = load_complex(args.input)
    colors = load_labeling(args.coloring)
    colors = colors.vertex_labels if colors is not None else compute_d_coloring(K, args.d)
    try:
        gl, G = geographize(K, colors, args.d)
    except ValueError as e:
        raise InputError(str(e)) from None
    index = {g: i for i, g in enumerate(G)}
    payload = {
        "count": len(G),
        "geographies": [{"center_color": jio.text(g.center_color), "chart": jio.complex_to_json(g.chart)}
                        for g in G],
        "vertex_geography": {jio.text(v): index[gl[v]] for v in K.vertices},
    }
    _report(args, payload, {"d": args.d}, f"{len(G)} geographies")
    return OK


def cmd_check_modeled(args) -> int:
    K = load_complex(args.input)
    ms = load_model_set(args.models)
    cert = is_modeled_on(K, ms, load_labeling(args.labeling))
    payload = {"modeled": cert is not None, "answer": "modeled" if cert else "not modeled"}
    if cert is not None:
        payload["models"] = {jio.text(x): i for x, (i, _) in sorted(cert.entries.items(),
                                                                    key=lambda p: jio._vkey(p[0]))}
        if cert.labeling is not None:
            payload["labeling"] = jio.labeling_to_json(cert.labeling)
    _report(args, payload, {"models": len(ms)}, payload["answer"])
    return OK if cert is not None else NEGATIVE


def cmd_enumerate(args) -> int:
    ms = load_model_set(args.models)
    found = enumerate_modeled(ms, args.max_vertices)
    names = [manifold_name(K, i) for i, K in enumerate(found)]
    _report(args, {"count": len(found), "names": names,
                   "complexes": [jio.complex_to_json(K) for K in found]},
            {"max_vertices": args.max_vertices, "dim": ms.dim}, f"{len(found)} found")
    return OK


def _build(args):
    ms = load_model_set(args.models)
    witnesses = [load_complex(w) for w in args.witnesses]
    try:
        return ms, build_universal(ms, witnesses, args.d)
    except ValueError as e:
        raise InputError(str(e)) from None


def cmd_build_universal(args) -> int:
    ms, b = _build(args)
    payload = {
        "d": b.d,
        "models": jio.model_set_to_json(ms),
        "witnesses": [jio.complex_to_json(M) for M in b.witnesses],
        "geographies": len(b.G),
        "psi": {jio.text(x): jio.text(c) for x, c in b.psi.items()},
        "W": jio.branched_to_json(b.W),
        "theta": [jio.immersion_to_json(t) for t in b.theta],
    }
    _emit(args, jio.envelope("build", payload, parameters=b.parameters))
    return OK


def cmd_immerse(args) -> int:
    M = load_complex(args.input)
    W = load_branched(args.into)
    imm = find_immersion(M, W)
    if imm is None:
        _report(args, {"immersion": None, "answer": "no immersion"}, {}, "no immersion")
        return NEGATIVE
    _emit(args, jio.envelope("immersion", jio.immersion_to_json(imm)))
    return OK


def cmd_verify(args) -> int:
    ms, b = _build(args)
    try:
        rep = verify_equivalence(ms, b, args.max_vertices)
    except ValueError as e:
        raise InputError(str(e)) from None
    _report(args, {"modeled": rep.modeled, "immersed": rep.immersed,
                   "disagreements": rep.disagreements, "unsaturated": rep.unsaturated,
                   "agrees": rep.agrees},
            {"d": b.d, "max_vertices": args.max_vertices, "witnesses": len(b.witnesses)},
            rep.summary())
    return OK if rep.agrees else NEGATIVE


def _word_arg(parts) -> tuple:
    try:
        return parse_word(" ".join(parts))
    except ValueError as e:
        raise InputError(str(e)) from None


def cmd_bundle(args) -> int:
    if args.action == "eval":
        w = _word_arg(args.word)
        m = eval_word(w)
        _emit(args, jio.envelope("matrix", jio.matrix_to_json(m), parameters={"word": list(w)}), str(m))
    elif args.action == "factor":
        m = Matrix2Z(*args.entries)
        if m.det not in (1, -1):
            raise InputError(f"determinant {m.det} is not +-1")
        w = factor_matrix(m)
        _emit(args, jio.envelope("word", jio.word_to_json(w), parameters={"rows": m.rows}),
              " ".join(w) or "(empty word)")
    else:
        w = _word_arg(args.word)
        if not w:
            raise InputError("certify needs a nonempty word")
        c = bundle_certificate(w)
        payload = {"word": list(c.word), "monodromy": c.monodromy.rows, "fiber": c.fiber,
                   "circle_vertices": len(c.immersion.map.source.vertices),
                   "immersion": jio.immersion_to_json(c.immersion),
                   "covering": c.covering}
        _report(args, payload, {"word": list(w)}, f"monodromy {c.monodromy}")
    return OK


def cmd_fixture(args) -> int:
    if args.name in fixtures.COMPLEXES:
        _emit(args, jio.serialize(fixtures.COMPLEXES[args.name]()))
    elif args.name in fixtures.MODEL_SETS:
        _emit(args, jio.serialize(fixtures.MODEL_SETS[args.name]()))
    else:
        raise InputError(f"unknown fixture {args.name!r}")
    return OK


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lcdkit", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("-o", "--output", help="write the document here instead of stdout")
        p.set_defaults(func=fn)
        return p

    p = add("validate", cmd_validate, "check a complex, model, model set or branched manifold")
    p.add_argument("input")
    p.add_argument("--kind", choices=["complex", "model", "model-set", "branched"],
                   help="kind of a bare (unwrapped) document")

    p = add("subdivide", cmd_subdivide, "stellar, chain or standard subdivision")
    p.add_argument("input")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--stellar", metavar="SIMPLEX", help="comma-separated vertices")
    g.add_argument("--chain", nargs=3, metavar=("SIGMA", "TAU", "K"))
    g.add_argument("--standard", metavar="SIMPLEX")
    p.add_argument("--N", type=int, help="chain length parameter for --standard")

    p = add("encode", cmd_encode, "encode labels by standard subdivisions")
    p.add_argument("input")
    p.add_argument("--labeling")

    p = add("decode", cmd_decode, "recover a labeled complex from an encoding")
    p.add_argument("input")

    p = add("color", cmd_color, "greedy d-coloring")
    p.add_argument("input")
    p.add_argument("--d", type=int, required=True)

    p = add("geographies", cmd_geographies, "geographies of a colored complex")
    p.add_argument("input")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--coloring", help="labeling document holding the colors")

    p = add("check-modeled", cmd_check_modeled, "is the complex modeled on the model set?")
    p.add_argument("input")
    p.add_argument("--models", required=True)
    p.add_argument("--labeling")

    p = add("enumerate", cmd_enumerate, "closed manifolds modeled on the model set")
    p.add_argument("--models", required=True)
    p.add_argument("--max-vertices", type=int, required=True)

    for name, fn, help_ in (("build-universal", cmd_build_universal, "universal branched manifold"),
                            ("verify-equivalence", cmd_verify, "compare modeled-on with immersions")):
        p = add(name, fn, help_)
        p.add_argument("--models", required=True)
        p.add_argument("--witnesses", nargs="+", required=True)
        p.add_argument("--d", type=int)
        if name == "verify-equivalence":
            p.add_argument("--max-vertices", type=int, required=True)

    p = add("immerse", cmd_immerse, "search for a proper immersion")
    p.add_argument("input")
    p.add_argument("--into", required=True, help="branched, build or complex document")

    p = add("bundle", cmd_bundle, "GL(2,Z) words and torus-bundle certificates")
    bsub = p.add_subparsers(dest="action", required=True)
    q = bsub.add_parser("eval")
    q.add_argument("word", nargs="*")
    q = bsub.add_parser("factor")
    q.add_argument("entries", nargs=4, type=int, metavar=("A", "B", "C", "D"))
    q = bsub.add_parser("certify")
    q.add_argument("word", nargs="+")
    for q in bsub.choices.values():
        q.add_argument("-o", "--output")

    p = add("fixture", cmd_fixture, "print a named fixture")
    p.add_argument("name")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (jio.FormatError, InputError) as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR
    except (ValueError, KeyError) as e:
        print(f"error: {args.command}: {e}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
