"""JSON documents for algebras, maps, commutative associative algebras and modules.

Basis indices in documents are 1-based. Rationals are strings "p" or "p/q".
Matrices are row-major lists of rows, so column j holds the image of basis j.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .algebra import ColorSpace, HomColorAlgebra, HomogeneousMap, NormalizationError, load_normalize
from .exactla import Matrix, format_rational, parse_rational
from .grading import Bicharacter, GradingError, GradingGroup, validate_bicharacter


class DocumentError(ValueError):
    """Unreadable or schema-invalid input document."""

    def __init__(self, message, location=""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


def _rat(x, where):
    try:
        return parse_rational(x)
    except (TypeError, ValueError) as exc:
        raise DocumentError(str(exc), where) from None


def _int(x, where):
    if isinstance(x, bool) or not isinstance(x, int):
        raise DocumentError(f"expected an integer, got {x!r}", where)
    return x


def _require(doc, key, where):
    if not isinstance(doc, dict) or key not in doc:
        raise DocumentError(f"missing field {key!r}", where)
    return doc[key]


def _list(x, where):
    if not isinstance(x, list):
        raise DocumentError(f"expected a list, got {type(x).__name__}", where)
    return x


def read_json(path) -> dict:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read file: {exc.strerror}", str(p)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", str(p)) from None


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def write_json(path, doc) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


# ---------------------------------------------------------------------------
# graded spaces


def space_from_doc(doc, where="") -> ColorSpace:
    gdoc = _require(doc, "group", where)
    group = GradingGroup(_int(gdoc.get("free_rank", 0), f"{where}/group/free_rank"),
                         tuple(_int(m, f"{where}/group/torsion") for m in _list(gdoc.get("torsion", []), f"{where}/group/torsion")))
    bdoc = doc.get("bicharacter", {"matrix": []})
    form = [[_int(x, f"{where}/bicharacter/matrix") for x in _list(row, f"{where}/bicharacter/matrix")]
            for row in _list(bdoc.get("matrix", []), f"{where}/bicharacter/matrix")]
    try:
        chi = Bicharacter(group, tuple(tuple(r) for r in form))
    except GradingError as exc:
        raise DocumentError(str(exc), f"{where}/bicharacter") from None
    bad = validate_bicharacter(chi)
    if bad:
        raise DocumentError("invalid bicharacter: " + "; ".join(v.message for v in bad), f"{where}/bicharacter")
    basis = []
    for k, b in enumerate(_list(_require(doc, "basis", where), f"{where}/basis")):
        loc = f"{where}/basis[{k + 1}]"
        name = _require(b, "name", loc)
        deg = [_int(c, f"{loc}/degree") for c in _list(b.get("degree", []), f"{loc}/degree")]
        try:
            basis.append((str(name), group.degree(deg)))
        except GradingError as exc:
            raise DocumentError(str(exc), loc) from None
    try:
        return ColorSpace(group, chi, basis)
    except (GradingError, ValueError) as exc:
        raise DocumentError(str(exc), f"{where}/basis") from None


def space_to_doc(space: ColorSpace) -> dict:
    return {
        "group": {"free_rank": space.group.free_rank, "torsion": list(space.group.torsion_moduli)},
        "bicharacter": {"matrix": [list(r) for r in space.chi.form]},
        "basis": [{"name": b.name, "degree": list(b.degree.coords)} for b in space.basis],
    }


def _matrix_from_doc(rows, nrows, ncols, where) -> Matrix:
    rows = _list(rows, where)
    if len(rows) != nrows:
        raise DocumentError(f"matrix has {len(rows)} rows, expected {nrows}", where)
    out = []
    for i, r in enumerate(_list(x, where) for x in rows):
        if len(r) != ncols:
            raise DocumentError(f"row {i + 1} has {len(r)} entries, expected {ncols}", where)
        out.append([_rat(x, f"{where}[{i + 1}]") for x in r])
    return Matrix(out, ncols)


def _matrix_to_doc(m: Matrix) -> list:
    return [[format_rational(x) for x in row] for row in m.rows]


def _vector_from_terms(terms, dim, where):
    v = [Fraction(0)] * dim
    for t in _list(terms, where):
        i = _int(_require(t, "basis", where), f"{where}/basis")
        if not 1 <= i <= dim:
            raise DocumentError(f"basis index {i} out of range 1..{dim}", where)
        v[i - 1] += _rat(_require(t, "coeff", where), f"{where}/coeff")
    return tuple(v)


def _vector_to_terms(v) -> list:
    return [{"basis": i + 1, "coeff": format_rational(c)} for i, c in enumerate(v) if c]


# ---------------------------------------------------------------------------
# algebras


def algebra_from_doc(doc, where="") -> HomColorAlgebra:
    space = space_from_doc(doc, where)
    n = _int(_require(doc, "arity", where), f"{where}/arity")
    if n < 2:
        raise DocumentError(f"arity must be at least 2, got {n}", f"{where}/arity")
    d = space.dim
    if "alpha" in doc:
        alpha = HomogeneousMap(space, _matrix_from_doc(doc["alpha"], d, d, f"{where}/alpha"))
    else:
        alpha = HomogeneousMap.identity(space)
    entries = []
    for k, e in enumerate(_list(doc.get("brackets", []), f"{where}/brackets")):
        loc = f"{where}/brackets[{k + 1}]"
        args = [_int(a, f"{loc}/args") for a in _list(_require(e, "args", loc), f"{loc}/args")]
        if any(not 1 <= a <= d for a in args):
            raise DocumentError(f"argument index out of range 1..{d}: {args}", loc)
        entries.append((tuple(a - 1 for a in args), _vector_from_terms(e.get("value", []), d, f"{loc}/value")))
    try:
        bracket = load_normalize(space, n, entries)
    except NormalizationError as exc:
        raise DocumentError(str(exc), f"{where}/brackets") from None
    return HomColorAlgebra(space, bracket, alpha, str(doc.get("name", "")))


def algebra_to_doc(alg: HomColorAlgebra) -> dict:
    doc = {"name": alg.name} if alg.name else {}
    doc.update(space_to_doc(alg.space))
    doc["arity"] = alg.arity
    doc["alpha"] = _matrix_to_doc(alg.alpha.matrix)
    doc["brackets"] = [{"args": [i + 1 for i in key], "value": _vector_to_terms(val)}
                       for key, val in alg.constants.items()]
    # keep key order stable: name, group, bicharacter, basis, arity, alpha, brackets
    return doc


def load_algebra(path) -> HomColorAlgebra:
    return algebra_from_doc(read_json(path), str(path))


def save_algebra(path, alg: HomColorAlgebra) -> None:
    write_json(path, algebra_to_doc(alg))


# ---------------------------------------------------------------------------
# maps


def map_from_doc(doc, space: ColorSpace, where="") -> HomogeneousMap:
    deg = doc.get("degree", [])
    try:
        degree = space.group.degree([_int(c, f"{where}/degree") for c in _list(deg, f"{where}/degree")])
    except GradingError as exc:
        raise DocumentError(str(exc), f"{where}/degree") from None
    m = _matrix_from_doc(_require(doc, "matrix", where), space.dim, space.dim, f"{where}/matrix")
    return HomogeneousMap(space, m, degree)


def map_to_doc(f: HomogeneousMap) -> dict:
    return {"degree": list(f.degree.coords), "matrix": _matrix_to_doc(f.matrix)}


def load_map(path, space: ColorSpace) -> HomogeneousMap:
    return map_from_doc(read_json(path), space, str(path))


# ---------------------------------------------------------------------------
# commutative associative algebras


def commassoc_from_doc(doc, where=""):
    from .constructions import CommAssocAlgebra

    names = [str(x) for x in _list(_require(doc, "basis", where), f"{where}/basis")]
    d = len(names)
    table = [[(Fraction(0),) * d for _ in range(d)] for _ in range(d)]
    for k, e in enumerate(_list(doc.get("products", []), f"{where}/products")):
        loc = f"{where}/products[{k + 1}]"
        args = [_int(a, f"{loc}/args") for a in _list(_require(e, "args", loc), f"{loc}/args")]
        if len(args) != 2 or any(not 1 <= a <= d for a in args):
            raise DocumentError(f"product needs two indices in 1..{d}, got {args}", loc)
        table[args[0] - 1][args[1] - 1] = _vector_from_terms(e.get("value", []), d, f"{loc}/value")
    try:
        return CommAssocAlgebra(names, table)
    except ValueError as exc:
        raise DocumentError(str(exc), where) from None


def commassoc_to_doc(a) -> dict:
    prods = []
    for i in range(a.dim):
        for j in range(a.dim):
            if any(a.table[i][j]):
                prods.append({"args": [i + 1, j + 1], "value": _vector_to_terms(a.table[i][j])})
    return {"kind": "commassoc", "basis": list(a.names), "products": prods}


# ---------------------------------------------------------------------------
# modules


def module_from_doc(doc, alg: HomColorAlgebra, where=""):
    """Module document: basis and alpha like an algebra; actions list entries
    {"slot": i, "args": [...n indices...], "value": [...]} where position i of
    args indexes the module basis and the other positions index L."""
    from .hommodules import HomModule, ModuleActions

    sub = dict(doc)
    sub.setdefault("group", space_to_doc(alg.space)["group"])
    sub.setdefault("bicharacter", space_to_doc(alg.space)["bicharacter"])
    mspace = space_from_doc(sub, where)
    if not mspace.same_grading(alg.space):
        raise DocumentError("module grading differs from the algebra's", where)
    d = mspace.dim
    if "alpha" in doc:
        am = HomogeneousMap(mspace, _matrix_from_doc(doc["alpha"], d, d, f"{where}/alpha"))
    else:
        am = HomogeneousMap.identity(mspace)
    n = alg.arity
    tables = [dict() for _ in range(n)]
    for k, e in enumerate(_list(doc.get("actions", []), f"{where}/actions")):
        loc = f"{where}/actions[{k + 1}]"
        slot = _int(_require(e, "slot", loc), f"{loc}/slot")
        if not 1 <= slot <= n:
            raise DocumentError(f"slot {slot} out of range 1..{n}", loc)
        args = [_int(a, f"{loc}/args") for a in _list(_require(e, "args", loc), f"{loc}/args")]
        if len(args) != n:
            raise DocumentError(f"action entry needs {n} indices", loc)
        for p, a in enumerate(args):
            bound = d if p == slot - 1 else alg.dim
            if not 1 <= a <= bound:
                raise DocumentError(f"index {a} at position {p + 1} out of range 1..{bound}", loc)
        key = tuple(a - 1 for a in args)
        tables[slot - 1][key] = _vector_from_terms(e.get("value", []), d, f"{loc}/value")
    return HomModule(mspace, am), ModuleActions(alg.space, mspace, n, tables)


def module_to_doc(mod, acts) -> dict:
    doc = space_to_doc(mod.space)
    doc["kind"] = "module"
    doc["alpha"] = _matrix_to_doc(mod.alpha.matrix)
    entries = []
    for slot in range(acts.arity):
        for key, val in sorted(acts.tables[slot].items()):
            if any(val):
                entries.append({"slot": slot + 1, "args": [i + 1 for i in key], "value": _vector_to_terms(val)})
    doc["actions"] = entries
    return doc
