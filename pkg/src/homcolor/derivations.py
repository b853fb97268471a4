"""Derivation-type spaces of End(L) as exact nullspaces, and the operations on them.

Maps are flattened row-major (entry (i, j) at i * dim + j) when they are
treated as vectors. The sign in every Leibniz-type identity is eps(d, X_i) with
X_i the sum of the degrees of the arguments strictly before slot i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .algebra import (
    ColorSpace, HomColorAlgebra, HomogeneousMap, NAryBracket, PreconditionError, Verdict,
    _names, _residual_witness, _sparse_axpy, canonical_tuples, check_multiplicative, classify, to_dense,
)
from .constructions import CommAssocAlgebra, tensor_map, tensor_product
from .exactla import Matrix, RowReducer, Subspace, nullspace_of_rows
from .grading import Degree

KINDS = ("der", "centroid", "quasicentroid", "zder")
X_CONVENTION = "X_i = sum of the degrees of x_1..x_{i-1} (identity degree for i = 1)"
QC_CONVENTION = "quasicentroid: [D x_1, a^k x_2, ..., a^k x_n] equals each insertion term"


class ClosureError(ValueError):
    """A structure map leaves the subspace it should preserve."""


def candidate_degrees(alg: HomColorAlgebra) -> list[Degree]:
    """Degrees b - a over basis degrees a, b, together with the identity."""
    degs = set(alg.space.degrees)
    out = {alg.space.zero_degree()}
    for a in degs:
        for b in degs:
            out.add(b - a)
    return sorted(out)


def _alpha_k(alg: HomColorAlgebra, k: int) -> HomogeneousMap:
    if k < 0:
        if k != -1:
            raise ValueError(f"twist exponent must be at least -1, got {k}")
        if not classify(alg).regular:
            raise PreconditionError("k = -1 needs a regular algebra")
    return alg.alpha_power(k)


def _pattern(alg: HomColorAlgebra, d: Degree) -> list[tuple[int, int]]:
    degs = alg.space.degrees
    n = alg.dim
    return [(i, j) for i in range(n) for j in range(n) if degs[i] == degs[j] + d]


def _tuples(alg: HomColorAlgebra, ordered: bool):
    if ordered:
        return product(range(alg.dim), repeat=alg.arity)
    # repeated arguments stay in: [x] may vanish while single insertion terms do not
    return canonical_tuples(alg.space, alg.arity, skip_zero=False)


class _Assembler:
    """Linear forms of the Leibniz-type pieces in the entries of one unknown map of degree d."""

    def __init__(self, alg: HomColorAlgebra, k: int, d: Degree):
        self.alg = alg
        self.d = d
        self.ak = _alpha_k(alg, k).sparse_columns()
        self.vars = _pattern(alg, d)
        self.by_col: dict[int, list[tuple[int, int]]] = {}
        for v, (i, j) in enumerate(self.vars):
            self.by_col.setdefault(j, []).append((v, i))

    def lhs(self, x) -> dict[int, dict]:
        """var -> sparse vector of D([x]) per unit entry."""
        br = self.alg.basis_sparse(x)
        out: dict[int, dict] = {}
        for j, c in br.items():
            for v, i in self.by_col.get(j, ()):
                out.setdefault(v, {})[i] = out.get(v, {}).get(i, 0) + c
        return out

    def term(self, x, p: int) -> dict[int, dict]:
        """var -> sparse vector of eps(d, X_p)[a^k x_1, .., D x_p, .., a^k x_n] per unit entry."""
        alg = self.alg
        space = alg.space
        big_x = space.zero_degree()
        for q in range(p):
            big_x = big_x + space.degrees[x[q]]
        sign = space.eps(self.d, big_x)
        out = {}
        base = [self.ak[i] for i in x]
        for v, i in self.by_col.get(x[p], ()):
            args = list(base)
            args[p] = {i: Fraction(1)}
            val = alg.bracket_sparse(args)
            if val:
                out[v] = {c: sign * y for c, y in val.items()}
        return out

    def alpha_rows(self, offset: int, nvars: int):
        """Rows expressing alpha o D - D o alpha = 0 for the block starting at ``offset``."""
        am = self.alg.alpha.matrix
        n = self.alg.dim
        for r in range(n):
            for c in range(n):
                row = [Fraction(0)] * nvars
                for v, (i, j) in enumerate(self.vars):
                    # (alpha D)[r][c] = sum_i alpha[r][i] D[i][c]; (D alpha)[r][c] = sum_j D[r][j] alpha[j][c]
                    coef = Fraction(0)
                    if j == c:
                        coef += am[r, i]
                    if i == r:
                        coef -= am[j, c]
                    if coef:
                        row[offset + v] += coef
                if any(row):
                    yield row


def _emit(red: RowReducer, nvars: int, pieces: Sequence[tuple[int, Fraction, dict]], dim: int) -> None:
    """Add rows for sum of coeff * piece == 0, pieces given as (offset, coeff, var -> sparse vector)."""
    rows: dict[int, list] = {}
    for offset, coeff, piece in pieces:
        for v, vecd in piece.items():
            for c, y in vecd.items():
                row = rows.get(c)
                if row is None:
                    row = rows[c] = [Fraction(0)] * nvars
                row[offset + v] += coeff * y
    for c in sorted(rows):
        if any(rows[c]):
            red.add(rows[c])


def _to_flat(alg: HomColorAlgebra, varlist, sol, offset: int = 0) -> tuple:
    n = alg.dim
    flat = [Fraction(0)] * (n * n)
    for v, (i, j) in enumerate(varlist):
        flat[i * n + j] = sol[offset + v]
    return tuple(flat)


@dataclass
class MapSpace:
    """Per-degree subspaces of End(L), each stored as a subspace of flattened matrices.

    For joint unknowns (quasiderivations, generalized derivations) ``joint``
    holds the full tuple spaces and ``by_degree`` the projection to D.
    """

    alg: HomColorAlgebra
    kind: str
    k: int
    by_degree: dict
    joint: dict = field(default_factory=dict)
    parts: int = 1

    def degrees(self) -> list[Degree]:
        return sorted(self.by_degree)

    def dims(self) -> dict[Degree, int]:
        return {d: self.by_degree[d].dim for d in self.degrees()}

    def joint_dims(self) -> dict[Degree, int]:
        return {d: self.joint[d].dim for d in sorted(self.joint)}

    @property
    def dim(self) -> int:
        return sum(s.dim for s in self.by_degree.values())

    def maps(self, d: Degree | None = None) -> list[HomogeneousMap]:
        degs = [d] if d is not None else self.degrees()
        out = []
        for dd in degs:
            sub = self.by_degree.get(dd)
            if sub is None:
                continue
            for v in sub.vectors():
                out.append(HomogeneousMap.from_flat(self.alg.space, v, dd))
        return out

    def joint_maps(self, d: Degree) -> list[list[HomogeneousMap]]:
        n2 = self.alg.dim ** 2
        out = []
        for v in self.joint[d].vectors():
            out.append([HomogeneousMap.from_flat(self.alg.space, v[p * n2:(p + 1) * n2], d) for p in range(self.parts)])
        return out

    def contains(self, f: HomogeneousMap) -> bool:
        if f.is_zero():
            return True
        if f.degree_violations():
            return False
        sub = self.by_degree.get(f.degree)
        return sub is not None and f.flatten() in sub

    def __contains__(self, f) -> bool:
        return self.contains(f)


def _solve_single(alg: HomColorAlgebra, k: int, kind: str, d: Degree) -> Subspace:
    asm = _Assembler(alg, k, d)
    nv = len(asm.vars)
    n2 = alg.dim ** 2
    if nv == 0:
        return Subspace.zero(n2)
    red = RowReducer(nv)
    for row in asm.alpha_rows(0, nv):
        red.add(row)
    n = alg.arity
    for x in _tuples(alg, ordered=False):
        lhs = asm.lhs(x)
        terms = [asm.term(x, p) for p in range(n)]
        if kind == "der":
            _emit(red, nv, [(0, Fraction(1), lhs)] + [(0, Fraction(-1), t) for t in terms], alg.dim)
        elif kind == "centroid":
            for t in terms:
                _emit(red, nv, [(0, Fraction(1), lhs), (0, Fraction(-1), t)], alg.dim)
        elif kind == "quasicentroid":
            for t in terms[1:]:
                _emit(red, nv, [(0, Fraction(1), terms[0]), (0, Fraction(-1), t)], alg.dim)
        elif kind == "zder":
            _emit(red, nv, [(0, Fraction(1), lhs)], alg.dim)
            for t in terms:
                _emit(red, nv, [(0, Fraction(1), t)], alg.dim)
        else:
            raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
        if red.rank == nv:
            return Subspace.zero(n2)
    rows, _ = red.rref_rows()
    sol = nullspace_of_rows(rows, nv)
    return Subspace.span([_to_flat(alg, asm.vars, v) for v in sol.vectors()], n2)


def compute_space(alg: HomColorAlgebra, k: int, kind: str) -> MapSpace:
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    _alpha_k(alg, k)
    return MapSpace(alg, kind, k, {d: _solve_single(alg, k, kind, d) for d in candidate_degrees(alg)})


def _solve_joint(alg: HomColorAlgebra, k: int, d: Degree, parts: int, ordered: bool, outer: int, slot_part):
    """Joint nullspace over ``parts`` maps of degree d: part ``outer`` applied to [x]
    equals the sum of insertion terms, slot p using part slot_part(p)."""
    asm = _Assembler(alg, k, d)
    nv1 = len(asm.vars)
    nv = nv1 * parts
    n2 = alg.dim ** 2
    if nv1 == 0:
        return Subspace.zero(n2 * parts), Subspace.zero(n2)
    red = RowReducer(nv)
    for p in range(parts):
        for row in asm.alpha_rows(p * nv1, nv):
            red.add(row)
    for x in _tuples(alg, ordered):
        pieces = [(outer * nv1, Fraction(1), asm.lhs(x))]
        for p in range(alg.arity):
            pieces.append((slot_part(p) * nv1, Fraction(-1), asm.term(x, p)))
        _emit(red, nv, pieces, alg.dim)
    rows, _ = red.rref_rows()
    sol = nullspace_of_rows(rows, nv)
    joint_vecs = []
    for v in sol.vectors():
        flat = ()
        for p in range(parts):
            flat += _to_flat(alg, asm.vars, v, p * nv1)
        joint_vecs.append(flat)
    joint = Subspace.span(joint_vecs, n2 * parts)
    proj = Subspace.span([jv[:n2] for jv in joint_vecs], n2)
    return joint, proj


def compute_qder(alg: HomColorAlgebra, k: int) -> MapSpace:
    """Pairs (D, D'); ``by_degree`` is the projection to D."""
    _alpha_k(alg, k)
    joint, proj = {}, {}
    for d in candidate_degrees(alg):
        joint[d], proj[d] = _solve_joint(alg, k, d, 2, False, 1, lambda p: 0)
    return MapSpace(alg, "qder", k, proj, joint, 2)


def compute_gder(alg: HomColorAlgebra, k: int) -> MapSpace:
    """Tuples (D, D', ..., D^(n)) over every argument order; ``by_degree`` is the projection to D."""
    _alpha_k(alg, k)
    n = alg.arity
    joint, proj = {}, {}
    for d in candidate_degrees(alg):
        joint[d], proj[d] = _solve_joint(alg, k, d, n + 1, True, n, lambda p: p)
    return MapSpace(alg, "gder", k, proj, joint, n + 1)


def gder_projection_all(space: MapSpace) -> dict:
    """Span of every component map of every tuple, per degree."""
    n2 = space.alg.dim ** 2
    out = {}
    for d, sub in space.joint.items():
        vecs = []
        for v in sub.vectors():
            vecs.extend(v[p * n2:(p + 1) * n2] for p in range(space.parts))
        out[d] = Subspace.span(vecs, n2)
    return out


def in_qder_with(alg: HomColorAlgebra, space: MapSpace, d_map: HomogeneousMap, dprime: HomogeneousMap) -> bool:
    if space.kind != "qder":
        raise ValueError("expected a quasiderivation space")
    sub = space.joint.get(d_map.degree)
    if sub is None:
        return d_map.is_zero() and dprime.is_zero()
    return d_map.flatten() + dprime.flatten() in sub


def in_gder_with(space: MapSpace, maps: Sequence[HomogeneousMap]) -> bool:
    if space.kind != "gder":
        raise ValueError("expected a generalized derivation space")
    if len(maps) != space.parts:
        raise ValueError(f"need {space.parts} maps")
    sub = space.joint.get(maps[0].degree)
    flat = ()
    for m in maps:
        flat += m.flatten()
    if sub is None:
        return not any(flat)
    return flat in sub


# ---------------------------------------------------------------------------
# direct checks


def _insertion_terms(alg: HomColorAlgebra, D: HomogeneousMap, k: int, x, maps=None):
    space = alg.space
    ak = _alpha_k(alg, k).sparse_columns()
    out = []
    big_x = space.zero_degree()
    for p in range(alg.arity):
        m = (maps[p] if maps else D).sparse_columns()
        args = [ak[i] for i in x]
        args[p] = m[x[p]]
        val = alg.bracket_sparse(args)
        s = space.eps(D.degree, big_x)
        out.append({c: s * y for c, y in val.items()})
        big_x = big_x + space.degrees[x[p]]
    return out


def _alpha_commutes(alg: HomColorAlgebra, D: HomogeneousMap):
    if alg.alpha.matrix @ D.matrix != D.matrix @ alg.alpha.matrix:
        return {"condition": "alpha o D = D o alpha"}
    return None


def check_map_kind(alg: HomColorAlgebra, D: HomogeneousMap, k: int, kind: str) -> Verdict:
    """Direct evaluation of one defining identity set (der, centroid, quasicentroid, zder)."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    name = {"der": "derivation"}.get(kind, kind)
    notes = [X_CONVENTION] + ([QC_CONVENTION] if kind == "quasicentroid" else [])
    if D.degree_violations():
        return Verdict(name, False, {"condition": f"D homogeneous of degree {D.degree}"}, notes=notes)
    w = _alpha_commutes(alg, D)
    if w:
        return Verdict(name, False, w, notes=notes)
    for x in canonical_tuples(alg.space, alg.arity, skip_zero=False):
        lhs = D.apply_sparse(alg.basis_sparse(x))
        terms = _insertion_terms(alg, D, k, x)
        checks = []
        if kind == "der":
            diff = dict(lhs)
            for t in terms:
                _sparse_axpy(diff, -1, t)
            checks.append(("D[x] = sum of insertion terms", diff))
        elif kind == "centroid":
            for p, t in enumerate(terms):
                diff = dict(lhs)
                _sparse_axpy(diff, -1, t)
                checks.append((f"D[x] = insertion term {p + 1}", diff))
        elif kind == "quasicentroid":
            for p, t in enumerate(terms[1:], start=2):
                diff = dict(terms[0])
                _sparse_axpy(diff, -1, t)
                checks.append((f"insertion term 1 = insertion term {p}", diff))
        else:
            checks.append(("D[x] = 0", dict(lhs)))
            for p, t in enumerate(terms):
                checks.append((f"insertion term {p + 1} = 0", dict(t)))
        for cond, diff in checks:
            if diff:
                return Verdict(name, False, _residual_witness(alg.space, diff, condition=cond,
                                                              args=_names(alg.space, x)), notes=notes)
    return Verdict(name, True, notes=notes)


def check_alpha_k_derivation(alg: HomColorAlgebra, D: HomogeneousMap, k: int) -> Verdict:
    return check_map_kind(alg, D, k, "der")


def check_centroid(alg: HomColorAlgebra, D: HomogeneousMap, k: int = 0) -> Verdict:
    return check_map_kind(alg, D, k, "centroid")


# ---------------------------------------------------------------------------
# operations on maps


def commutator(alg: HomColorAlgebra, d1: HomogeneousMap, d2: HomogeneousMap) -> HomogeneousMap:
    """D1 o D2 - eps(d1, d2) D2 o D1."""
    s = alg.space.eps(d1.degree, d2.degree)
    m = d1.matrix @ d2.matrix - (d2.matrix @ d1.matrix).scale(s)
    return HomogeneousMap(alg.space, m, d1.degree + d2.degree)


def omega_twist(alg: HomColorAlgebra, D: HomogeneousMap) -> HomogeneousMap:
    return D.compose(alg.alpha)


def inner_derivation(alg: HomColorAlgebra, xs: Sequence[Sequence[Fraction]]) -> HomogeneousMap:
    """y -> [x_1, ..., x_{n-1}, y] for homogeneous x_i, of degree the sum of theirs."""
    if len(xs) != alg.arity - 1:
        raise ValueError(f"need {alg.arity - 1} elements, got {len(xs)}")
    deg = alg.space.zero_degree()
    for x in xs:
        dx = alg.space.degree_of(x)
        if dx is not None:
            deg = deg + dx
    sparse = [{i: Fraction(c) for i, c in enumerate(x) if c} for x in xs]
    cols = [to_dense(alg.bracket_sparse(sparse + [{j: Fraction(1)}]), alg.dim) for j in range(alg.dim)]
    return HomogeneousMap(alg.space, Matrix.from_columns(cols, alg.dim), deg)


def twist_range(alg: HomColorAlgebra, kmax: int) -> list[int]:
    ks = list(range(0, kmax + 1))
    if classify(alg).regular:
        ks = [-1] + ks
    return ks


def der_algebra(alg: HomColorAlgebra, kmax: int = 2) -> tuple[HomColorAlgebra, list[HomogeneousMap]]:
    """Binary algebra on W = sum of Der_{alpha^k} for k up to kmax (and k = -1 when regular).

    Returns the algebra and the maps its basis stands for. Raises ClosureError if
    the commutator or D -> D o alpha leaves W.
    """
    spaces = [compute_space(alg, k, "der") for k in twist_range(alg, kmax)]
    per_degree: dict[Degree, Subspace] = {}
    for sp in spaces:
        for d, sub in sp.by_degree.items():
            per_degree[d] = per_degree[d] + sub if d in per_degree else sub
    basis_maps: list[HomogeneousMap] = []
    names = []
    for d in sorted(per_degree):
        for v in per_degree[d].vectors():
            basis_maps.append(HomogeneousMap.from_flat(alg.space, v, d))
            names.append((f"D{len(names) + 1}", d))
    g = alg.space.group
    wspace = ColorSpace(g, alg.space.chi, names)
    m = len(basis_maps)
    index_of = {d: [i for i, (_, dd) in enumerate(names) if dd == d] for d in per_degree}

    def coords(f: HomogeneousMap, what: str) -> tuple:
        out = [Fraction(0)] * m
        if f.is_zero():
            return tuple(out)
        sub = per_degree.get(f.degree)
        v = f.flatten()
        if sub is None or v not in sub:
            raise ClosureError(f"{what} leaves the derivation space")
        for pos, c in zip(index_of[f.degree], sub.coordinates(v)):
            out[pos] = c
        return tuple(out)

    consts = {}
    for key in canonical_tuples(wspace, 2):
        a, b = key
        val = coords(commutator(alg, basis_maps[a], basis_maps[b]), f"[{names[a][0]}, {names[b][0]}]")
        if any(val):
            consts[key] = val
    omega_cols = [coords(omega_twist(alg, f), f"omega({names[i][0]})") for i, f in enumerate(basis_maps)]
    omega = HomogeneousMap(wspace, Matrix.from_columns(omega_cols, m) if m else Matrix.zeros(0, 0))
    return HomColorAlgebra(wspace, NAryBracket(wspace, 2, consts), omega, "Der"), basis_maps


# ---------------------------------------------------------------------------
# commutative associative centroid and tensor products


def assoc_centroid(a: CommAssocAlgebra) -> Subspace:
    """{f : f(xy) = f(x)y = x f(y)} as flattened matrices (entry (i, j) = coefficient of e_i in f(e_j))."""
    d = a.dim
    nv = d * d
    red = RowReducer(nv)
    for i in range(d):
        for j in range(d):
            prod_ij = a.table[i][j]
            # f(e_i e_j) - f(e_i) e_j and f(e_i e_j) - e_i f(e_j), coordinate by coordinate
            for first in (True, False):
                rows = [[Fraction(0)] * nv for _ in range(d)]
                for q, c in enumerate(prod_ij):
                    if c:
                        for r in range(d):
                            rows[r][r * d + q] += c
                for p in range(d):
                    # f(e_i) = sum_p f[p][i] e_p, times e_j; or e_i times f(e_j)
                    if first:
                        term, var = a.table[p][j], p * d + i
                    else:
                        term, var = a.table[i][p], p * d + j
                    for r, c in enumerate(term):
                        if c:
                            rows[r][var] -= c
                for row in rows:
                    if any(row):
                        red.add(row)
    rows, _ = red.rref_rows()
    return nullspace_of_rows(rows, nv)


def assoc_centroid_maps(a: CommAssocAlgebra) -> list[Matrix]:
    d = a.dim
    return [Matrix([v[i * d:(i + 1) * d] for i in range(d)], d) for v in assoc_centroid(a).vectors()]


def check_tensor_centroid(a: CommAssocAlgebra, alg: HomColorAlgebra, f: Matrix, phi: HomogeneousMap,
                          k: int = 0, product_algebra: HomColorAlgebra | None = None) -> Verdict:
    """f (x) phi lies in the alpha'^k-centroid of A (x) L."""
    t = product_algebra or tensor_product(a, alg)
    fp = tensor_map(a, alg, f, phi, t.space)
    v = check_centroid(t, fp, k)
    return Verdict("tensor_centroid", v.ok, v.witness, v.violations, v.notes)


# ---------------------------------------------------------------------------
# derivation tower report


@dataclass
class Tower:
    """All spaces of one algebra for one twist exponent."""

    k: int
    der: MapSpace
    centroid: MapSpace
    quasicentroid: MapSpace
    zder: MapSpace
    qder: MapSpace
    gder: MapSpace

    def dims(self) -> dict:
        def flat(sp):
            return {str(d): n for d, n in sp.dims().items()}
        return {
            "der": flat(self.der), "centroid": flat(self.centroid), "quasicentroid": flat(self.quasicentroid),
            "zder": flat(self.zder), "qder": flat(self.qder), "gder": flat(self.gder),
            "qder_joint": {str(d): n for d, n in self.qder.joint_dims().items()},
            "gder_joint": {str(d): n for d, n in self.gder.joint_dims().items()},
        }


def tower(alg: HomColorAlgebra, k: int) -> Tower:
    return Tower(k, compute_space(alg, k, "der"), compute_space(alg, k, "centroid"),
                 compute_space(alg, k, "quasicentroid"), compute_space(alg, k, "zder"),
                 compute_qder(alg, k), compute_gder(alg, k))


def requires_multiplicative(alg: HomColorAlgebra) -> bool:
    return bool(check_multiplicative(alg))


class _Spaces:
    """Lazily computed spaces keyed by (kind, k)."""

    def __init__(self, alg: HomColorAlgebra):
        self.alg = alg
        self._cache = {}

    def __call__(self, kind: str, k: int) -> MapSpace:
        key = (kind, k)
        if key not in self._cache:
            if kind == "qder":
                self._cache[key] = compute_qder(self.alg, k)
            elif kind == "gder":
                self._cache[key] = compute_gder(self.alg, k)
            else:
                self._cache[key] = compute_space(self.alg, k, kind)
        return self._cache[key]


def _describe(f: HomogeneousMap) -> dict:
    return {"degree": str(f.degree), "matrix": [list(r) for r in f.matrix.rows]}


class _Tally:
    def __init__(self):
        self.results = {}

    def add(self, statement: str, ok: bool, **witness):
        entry = self.results.setdefault(statement, {"checked": 0, "failures": []})
        entry["checked"] += 1
        if not ok and len(entry["failures"]) < 5:
            entry["failures"].append(witness)
        elif not ok:
            entry["failures_truncated"] = True


def chain_checks(alg: HomColorAlgebra, k: int, spaces: _Spaces | None = None) -> dict:
    """ZDer <= Der <= QDer <= GDer (projections) and ZDer = C meet Der, per degree."""
    sp = spaces or _Spaces(alg)
    z, der, c, q, g = (sp(kind, k) for kind in ("zder", "der", "centroid", "qder", "gder"))
    t = _Tally()
    for d in candidate_degrees(alg):
        dd = str(d)
        t.add("ZDer <= Der", z.by_degree[d] <= der.by_degree[d], degree=dd)
        t.add("Der <= QDer", der.by_degree[d] <= q.by_degree[d], degree=dd)
        t.add("QDer <= GDer", q.by_degree[d] <= g.by_degree[d], degree=dd)
        t.add("ZDer = C meet Der", z.by_degree[d] == (c.by_degree[d] & der.by_degree[d]), degree=dd)
    return t.results


def closure_checks(alg: HomColorAlgebra, kmax: int = 2, spaces: _Spaces | None = None) -> dict:
    """Membership tests for the bracket, composition and omega closures of the derivation tower.

    k and s range over 0..kmax. The statements about [C, QC] and the center are
    only included for regular algebras.
    """
    sp = spaces or _Spaces(alg)
    n = alg.arity
    t = _Tally()
    ks = range(kmax + 1)
    for k in ks:
        der_k, c_k, qc_k, qd_k, z_k = (sp(kind, k).maps() for kind in
                                       ("der", "centroid", "quasicentroid", "qder", "zder"))
        for D in c_k:
            t.add("C <= QDer with D' = nD", in_qder_with(alg, sp("qder", k), D, D.scale(n)), k=k, D=_describe(D))
        gd = sp("gder", k)
        for D1 in qd_k:
            for D2 in qc_k:
                if D1.degree == D2.degree:
                    t.add("QDer + QC <= GDer", gd.contains(D1 + D2), k=k, D1=_describe(D1), D2=_describe(D2))
        for kind, maps in (("der", der_k), ("centroid", c_k), ("quasicentroid", qc_k), ("zder", z_k),
                           ("qder", qd_k), ("gder", sp("gder", k).maps())):
            target = sp(kind, k + 1)
            for D in maps:
                t.add(f"omega({kind}_k) <= {kind}_(k+1)", target.contains(omega_twist(alg, D)), k=k, D=_describe(D))
        for s in ks:
            der_s, c_s, qc_s = (sp(kind, s).maps() for kind in ("der", "centroid", "quasicentroid"))
            der_ks, c_ks, qc_ks, qd_ks, z_ks = (sp(kind, k + s) for kind in
                                                ("der", "centroid", "quasicentroid", "qder", "zder"))
            for D1 in der_k:
                for D2 in der_s:
                    t.add("[Der_k, Der_s] <= Der_(k+s)", der_ks.contains(commutator(alg, D1, D2)),
                          k=k, s=s, D1=_describe(D1), D2=_describe(D2))
                for phi in c_s:
                    t.add("C_s o Der_k <= Der_(k+s)", der_ks.contains(phi.compose(D1)),
                          k=k, s=s, phi=_describe(phi), D=_describe(D1))
                    t.add("[Der_k, C_s] <= C_(k+s)", c_ks.contains(commutator(alg, D1, phi)),
                          k=k, s=s, D=_describe(D1), phi=_describe(phi))
            for D1 in qc_k:
                for D2 in qc_s:
                    t.add("[QC_k, QC_s] <= QDer_(k+s)", qd_ks.contains(commutator(alg, D1, D2)),
                          k=k, s=s, D1=_describe(D1), D2=_describe(D2))
            for D1 in qd_k:
                for D2 in qc_s:
                    t.add("[QDer_k, QC_s] <= QC_(k+s)", qc_ks.contains(commutator(alg, D1, D2)),
                          k=k, s=s, D1=_describe(D1), D2=_describe(D2))
            for D1 in z_k:
                for D2 in der_s:
                    t.add("[ZDer_k, Der_s] <= ZDer_(k+s)", z_ks.contains(commutator(alg, D1, D2)),
                          k=k, s=s, D1=_describe(D1), D2=_describe(D2))
    if classify(alg).regular:
        from .structure import center
        z = center(alg)
        for k in ks:
            for s in ks:
                for phi in sp("centroid", k).maps():
                    for psi in sp("quasicentroid", s).maps():
                        m = commutator(alg, phi, psi)
                        ok = all(m.matrix.column(j) in z for j in range(alg.dim))
                        t.add("[C, QC] maps into the center", ok, k=k, s=s, phi=_describe(phi), psi=_describe(psi))
    return t.results


def tower_report(alg: HomColorAlgebra, kmax: int = 2) -> dict:
    """Dimensions, chain checks and closure checks for k in 0..kmax."""
    sp = _Spaces(alg)
    out = {"dims": {}, "chain": {}, "convention": X_CONVENTION}
    for k in range(kmax + 1):
        tw = Tower(k, *(sp(kind, k) for kind in ("der", "centroid", "quasicentroid", "zder", "qder", "gder")))
        out["dims"][str(k)] = tw.dims()
        out["chain"][str(k)] = chain_checks(alg, k, sp)
    out["closures"] = closure_checks(alg, kmax, sp)
    return out
