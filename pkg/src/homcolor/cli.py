"""Command line front end: verify, construct, compute, check, properties.

Exit codes: 0 when no identity is violated, 1 when one is, 2 for unusable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .algebra import (
    HomColorAlgebra, NormalizationError, PreconditionError, Verdict, check_morphism, check_multiplicative, classify,
    jsonify, verify,
)
from .constructions import (
    averaging_twist_double, averaging_twist_single, check_averaging, check_semi_morphism, reduce_by_elements,
    semimorphism_twist, tensor_product, yau_twist,
)
from .derivations import X_CONVENTION, ClosureError, check_map_kind, compute_gder, compute_qder, compute_space, der_algebra
from .documents import (
    DocumentError, algebra_from_doc, algebra_to_doc, commassoc_from_doc, dumps, map_from_doc, module_from_doc,
    read_json, write_json,
)
from .exactla import format_rational
from .grading import GradingError
from .hommodules import check_module, self_module
from .properties import THEOREMS, run_suite
from .structure import center, derived_sequence, descending_central_sequence

OK, VIOLATION, BAD_INPUT = 0, 1, 2


def load_algebra(path) -> HomColorAlgebra:
    return algebra_from_doc(read_json(path), str(path))


def load_map(path, alg: HomColorAlgebra):
    return map_from_doc(read_json(path), alg.space, str(path))


def _element(alg: HomColorAlgebra, text: str):
    """A basis name, a 1-based index, or a JSON list of rationals."""
    text = text.strip()
    if text.startswith("["):
        vals = json.loads(text)
        if len(vals) != alg.dim:
            raise DocumentError(f"element has {len(vals)} entries, expected {alg.dim}", "--xi")
        return tuple(Fraction(str(v)) for v in vals)
    if text.isdigit():
        i = int(text) - 1
        if not 0 <= i < alg.dim:
            raise DocumentError(f"index {text} out of range", "--xi")
        name = alg.space.names[i]
    else:
        name = text
    try:
        return alg.space.basis_vector(name)
    except (KeyError, ValueError):
        raise DocumentError(f"unknown basis element {text!r}", "--xi") from None


def _verdicts(alg: HomColorAlgebra) -> dict:
    return {k: v.to_dict() for k, v in verify(alg).items()}


def _all_ok(verdicts: dict) -> bool:
    return all(v["ok"] for v in verdicts.values())


def _dims(d: dict) -> dict:
    return {str(k): v for k, v in d.items()}


# ---------------------------------------------------------------------------
# text rendering


def _render_text(report: dict) -> str:
    lines = []

    def walk(obj, indent):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v and not _flat_list(v):
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {_scalar(v)}")
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)) and not _flat_list(v):
                    lines.append(f"{pad}-")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}- {_scalar(v)}")

    walk(report, 0)
    return "\n".join(lines) + "\n"


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    return str(v)


def emit(report: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    report = jsonify(report)
    if fmt == "json":
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        out.write(_render_text(report))


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args) -> tuple[dict, int]:
    alg = load_algebra(args.algebra)
    verdicts = _verdicts(alg)
    cls = classify(alg)
    mult = check_multiplicative(alg)
    report = {
        "command": "verify", "algebra": alg.name or str(args.algebra), "dim": alg.dim, "arity": alg.arity,
        "checks": verdicts,
        "classification": {"multiplicative": cls.multiplicative, "regular": cls.regular,
                           "involutive": cls.involutive},
        "multiplicative": mult.to_dict(),
        "verified": _all_ok(verdicts),
    }
    return report, OK if report["verified"] else VIOLATION


def _construct(args):
    kind = args.kind
    if kind == "tensor":
        if len(args.inputs) != 2:
            raise DocumentError("tensor needs a commutative associative algebra and an algebra", "construct")
        a = commassoc_from_doc(read_json(args.inputs[0]), args.inputs[0])
        alg = load_algebra(args.inputs[1])
        return tensor_product(a, alg), {"factor": args.inputs[0], "algebra": alg.name}
    if len(args.inputs) != 1:
        raise DocumentError(f"{kind} takes one algebra document", "construct")
    alg = load_algebra(args.inputs[0])
    if kind == "reduce":
        if not args.xi:
            raise DocumentError("reduce needs at least one --xi", "construct")
        xis = [_element(alg, x) for x in args.xi]
        return reduce_by_elements(alg, xis), {"xi": [alg.space.format_vector(x) for x in xis]}
    if not args.map:
        raise DocumentError(f"{kind} needs --map", "construct")
    beta = load_map(args.map, alg)
    if kind == "twist":
        mv = check_morphism(beta, alg, alg)
        info = {"map": args.map, "morphism": mv.to_dict()}
        if not mv:
            info["note"] = ("the map is not an endomorphism of the input, so the twist theorem does not apply; "
                            "any claim that the output is a Hom-Lie color algebra rests on the checks below alone")
        return yau_twist(alg, beta), info
    if kind == "semitwist":
        return semimorphism_twist(alg, beta, args.slot), {"map": args.map, "slot": args.slot}
    if kind == "avgtwist":
        if args.slot2 is not None:
            return averaging_twist_double(alg, beta, args.slot, args.slot2), {
                "map": args.map, "slots": [args.slot, args.slot2]}
        return averaging_twist_single(alg, beta, args.slot), {"map": args.map, "slots": [args.slot]}
    raise DocumentError(f"unknown construction {kind!r}", "construct")


def cmd_construct(args) -> tuple[dict, int]:
    out_alg, info = _construct(args)
    verdicts = _verdicts(out_alg)
    doc = algebra_to_doc(out_alg)
    report = {"command": "construct", "kind": args.kind, "inputs": list(args.inputs), **info,
              "dim": out_alg.dim, "arity": out_alg.arity, "checks": verdicts, "verified": _all_ok(verdicts)}
    if args.out:
        write_json(args.out, doc)
        report["written"] = args.out
    else:
        report["document"] = doc
    return report, OK if report["verified"] else VIOLATION


def _subspace_report(alg, sub, bases: bool) -> dict:
    out = {"dim": sub.dim, "dims_by_degree": _dims(sub.dims_by_degree())}
    if bases:
        out["basis"] = [alg.space.format_vector(v) for v in sub.vectors()]
    return out


def _map_text(f) -> list[list[str]]:
    return [[format_rational(c) for c in row] for row in f.matrix.rows]


def cmd_compute(args) -> tuple[dict, int]:
    alg = load_algebra(args.algebra)
    kind = args.kind
    report = {"command": "compute", "kind": kind, "algebra": alg.name or str(args.algebra)}
    if kind == "center":
        report.update(_subspace_report(alg, center(alg), args.bases))
    elif kind in ("derived", "lcs"):
        seq = (derived_sequence if kind == "derived" else descending_central_sequence)(alg, args.depth)
        report["dims"] = [s.dim for s in seq]
        if args.bases:
            report["terms"] = [[alg.space.format_vector(v) for v in s.vectors()] for s in seq]
    elif kind == "deralg":
        w, maps = der_algebra(alg, args.kmax)
        report["kmax"] = args.kmax
        report["dim"] = w.dim
        report["checks"] = _verdicts(w)
        if args.bases:
            report["basis"] = {w.space.names[i]: _map_text(f) for i, f in enumerate(maps)}
            report["document"] = algebra_to_doc(w)
    else:
        k = args.k
        report["k"] = k
        report["convention"] = X_CONVENTION
        if kind == "qder":
            sp = compute_qder(alg, k)
        elif kind == "gder":
            sp = compute_gder(alg, k)
        else:
            sp = compute_space(alg, k, {"qcentroid": "quasicentroid"}.get(kind, kind))
        report["dim"] = sp.dim
        report["dims_by_degree"] = _dims(sp.dims())
        if sp.joint:
            report["joint_dims_by_degree"] = _dims(sp.joint_dims())
        if args.bases:
            report["basis"] = [{"degree": str(f.degree), "matrix": _map_text(f)} for f in sp.maps()]
    return report, OK


def cmd_check(args) -> tuple[dict, int]:
    alg = load_algebra(args.algebra)
    kind = args.kind
    report = {"command": "check", "kind": kind, "algebra": alg.name or str(args.algebra)}
    if kind == "module":
        if args.target in (None, "self"):
            mod, acts = self_module(alg)
            report["module"] = "self"
        else:
            mod, acts = module_from_doc(read_json(args.target), alg, args.target)
            report["module"] = args.target
        v = check_module(alg, mod, acts, exhaustive=args.exhaustive)
        report["result"] = v.to_dict()
        return report, OK if v else VIOLATION
    if args.target is None:
        raise DocumentError(f"check {kind} needs a map document", "check")
    f = load_map(args.target, alg)
    report["map"] = args.target
    if kind == "morphism":
        dst = load_algebra(args.dest) if args.dest else alg
        v = check_morphism(f, alg, dst)
    elif kind == "semimorphism":
        v = check_semi_morphism(alg, f)
    elif kind == "averaging":
        v = check_averaging(alg, f)
    elif kind == "derivation":
        report["k"] = args.k
        per = {kd: check_map_kind(alg, f, args.k, kd) for kd in ("der", "centroid", "quasicentroid", "zder")}
        report["checkers"] = {kd: vv.to_dict() for kd, vv in per.items()}
        v = per[args.as_kind]
        report["decisive"] = args.as_kind
    else:
        raise DocumentError(f"unknown check {kind!r}", "check")
    report["result"] = v.to_dict()
    return report, OK if v else VIOLATION


def cmd_properties(args) -> tuple[dict, int]:
    theorems = tuple(args.theorem) if args.theorem else THEOREMS
    report = run_suite(args.seed, args.cases, theorems)
    report["command"] = "properties"
    return report, OK if report["ok"] else VIOLATION


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--kmax", type=int, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="homcolor", description="Exact checks and constructions for n-Hom-Lie color algebras.")
    p.add_argument("--report", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kmax", type=int, default=2)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run every definitional check on an algebra document")
    v.add_argument("algebra")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("construct", parents=[common], help="build a new algebra document")
    c.add_argument("kind", choices=("twist", "reduce", "tensor", "semitwist", "avgtwist"))
    c.add_argument("inputs", nargs="+")
    c.add_argument("--map")
    c.add_argument("--xi", action="append", help="basis name, 1-based index or JSON vector; repeat to fix more slots")
    c.add_argument("--slot", type=int, default=1)
    c.add_argument("--slot2", type=int)
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    m = sub.add_parser("compute", parents=[common], help="structural invariants and derivation-type spaces")
    m.add_argument("kind", choices=("center", "derived", "lcs", "der", "qder", "gder", "centroid", "qcentroid",
                                    "zder", "deralg"))
    m.add_argument("algebra")
    m.add_argument("--k", type=int, default=0)
    m.add_argument("--depth", type=int, default=10)
    m.add_argument("--bases", action="store_true")
    m.set_defaults(func=cmd_compute)

    k = sub.add_parser("check", parents=[common], help="test a map or module against its defining identities")
    k.add_argument("kind", choices=("morphism", "semimorphism", "averaging", "derivation", "module"))
    k.add_argument("algebra")
    k.add_argument("target", nargs="?", help="map document, or module document / 'self' for module")
    k.add_argument("--dest", help="target algebra for morphism (default: the source)")
    k.add_argument("--k", type=int, default=0)
    k.add_argument("--as", dest="as_kind", default="der", choices=("der", "centroid", "quasicentroid", "zder"))
    k.add_argument("--exhaustive", action="store_true")
    k.set_defaults(func=cmd_check)

    r = sub.add_parser("properties", parents=[common], help="seeded property runs of the construction theorems")
    r.add_argument("--cases", type=int, default=100)
    r.add_argument("--theorem", action="append", choices=THEOREMS)
    r.set_defaults(func=cmd_properties)
    return p


def main(argv=None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        report, code = args.func(args)
    except (DocumentError, NormalizationError, GradingError, PreconditionError, ClosureError) as exc:
        report = {"command": args.command, "error": type(exc).__name__, "message": str(exc)}
        code = BAD_INPUT
    report["exit_code"] = code
    emit(report, args.report, out)
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
