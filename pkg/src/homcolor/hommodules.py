"""Hom-modules over n-Hom-Lie color algebras: actions, axiom checks, twists, sums."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Sequence

from .algebra import (
    ColorSpace, HomColorAlgebra, HomogeneousMap, NAryBracket, PreconditionError, Verdict,
    _sparse_axpy, canonical_tuples, check_morphism, check_multiplicative, to_dense,
)
from .exactla import Matrix

AXIOM_D_NOTE = ("axiom d): the right-hand side acts by omega_i with the inner "
                "omega_{n-1} value placed in slot i")
AXIOM_B_NOTE = "axiom b): the right-hand side is read as omega_{i+1}, the module element having moved to slot i+1"


class HomModule:
    """(M, alpha_M): a graded space with an even linear map."""

    def __init__(self, space: ColorSpace, alpha: HomogeneousMap | None = None):
        alpha = alpha or HomogeneousMap.identity(space)
        if alpha.source != space or alpha.target != space:
            raise ValueError("alpha_M must be an endomorphism of the module space")
        if not alpha.is_even:
            raise ValueError("alpha_M must be even")
        self.space = space
        self.alpha = alpha

    @property
    def dim(self) -> int:
        return self.space.dim

    def __repr__(self):
        return f"HomModule(dim={self.dim})"


class ModuleActions:
    """omega_1..omega_n as dense tables.

    ``tables[i]`` maps an index tuple of length n, whose position i indexes the
    module basis and whose other positions index L, to a module vector.
    Missing keys are zero.
    """

    def __init__(self, lspace: ColorSpace, mspace: ColorSpace, arity: int, tables: Sequence[dict]):
        if len(tables) != arity:
            raise ValueError(f"need {arity} action tables, got {len(tables)}")
        self.lspace = lspace
        self.mspace = mspace
        self.arity = arity
        self.tables = []
        self._sparse = []
        for i, t in enumerate(tables):
            clean = {}
            for key, val in t.items():
                key = tuple(key)
                if len(key) != arity:
                    raise ValueError(f"action key {key} does not have length {arity}")
                val = tuple(Fraction(c) for c in val)
                if len(val) != mspace.dim:
                    raise ValueError(f"action value for {key} has length {len(val)}, expected {mspace.dim}")
                if any(val):
                    clean[key] = val
            self.tables.append(clean)
            self._sparse.append({k: {j: c for j, c in enumerate(v) if c} for k, v in clean.items()})

    @classmethod
    def zero(cls, lspace: ColorSpace, mspace: ColorSpace, arity: int) -> "ModuleActions":
        return cls(lspace, mspace, arity, [{} for _ in range(arity)])

    def basis_sparse(self, slot: int, key: Sequence[int]) -> dict:
        return self._sparse[slot].get(tuple(key), {})

    def eval_sparse(self, slot: int, args: Sequence[dict]) -> dict:
        """omega_{slot+1} on sparse arguments; args[slot] is a module vector."""
        items = []
        for a in args:
            if not a:
                return {}
            items.append(list(a.items()))
        acc: dict = {}
        table = self._sparse[slot]
        for combo in product(*items):
            val = table.get(tuple(i for i, _ in combo))
            if not val:
                continue
            c = Fraction(1)
            for _, x in combo:
                c *= x
            _sparse_axpy(acc, c, val)
        return acc

    def eval(self, slot: int, args: Sequence[Sequence[Fraction]]) -> tuple:
        """omega_slot with a 1-based slot on dense vectors."""
        sp = [{j: c for j, c in enumerate(a) if c} for a in args]
        return to_dense(self.eval_sparse(slot - 1, sp), self.mspace.dim)

    def __eq__(self, other):
        return isinstance(other, ModuleActions) and self.tables == other.tables and self.arity == other.arity


def _unit(i: int) -> dict:
    return {i: Fraction(1)}


def _all_keys(ldim: int, mdim: int, n: int, slot: int):
    ranges = [range(mdim) if p == slot else range(ldim) for p in range(n)]
    return product(*ranges)


def self_module(alg: HomColorAlgebra) -> tuple[HomModule, ModuleActions]:
    """M = L, alpha_M = alpha, every omega_i the bracket."""
    n, d = alg.arity, alg.dim
    tables = []
    for slot in range(n):
        t = {}
        for key in _all_keys(d, d, n, slot):
            val = alg.basis_sparse(key)
            if val:
                t[key] = to_dense(val, d)
        tables.append(t)
    return HomModule(alg.space, alg.alpha), ModuleActions(alg.space, alg.space, n, tables)


def twist_actions(acts: ModuleActions, beta: HomogeneousMap, alg: HomColorAlgebra | None = None) -> ModuleActions:
    """beta on every L slot, identity on the module slot. With ``alg`` given, beta must be an endomorphism."""
    if not beta.is_even:
        raise PreconditionError("twisting actions by a map that is not even")
    if alg is not None:
        v = check_morphism(beta, alg, alg)
        if not v:
            raise PreconditionError(f"map is not an endomorphism: {v.witness}")
    cols = beta.sparse_columns()
    n, ld, md = acts.arity, acts.lspace.dim, acts.mspace.dim
    tables = []
    for slot in range(n):
        t = {}
        for key in _all_keys(ld, md, n, slot):
            args = [_unit(k) if p == slot else cols[k] for p, k in enumerate(key)]
            val = acts.eval_sparse(slot, args)
            if val:
                t[key] = to_dense(val, md)
        tables.append(t)
    return ModuleActions(acts.lspace, acts.mspace, n, tables)


def powers_self_module(alg: HomColorAlgebra, k: int) -> tuple[HomModule, ModuleActions]:
    if k < 1:
        raise ValueError(f"power must be at least 1, got {k}")
    if not check_multiplicative(alg):
        raise PreconditionError("powers of alpha give module actions only for multiplicative algebras")
    mod, acts = self_module(alg)
    return mod, twist_actions(acts, alg.alpha_power(k))


def _suffix_names(names, suffix, avoid):
    out = []
    for nme in names:
        out.append(nme if nme not in avoid else f"{nme}{suffix}")
    return out


def direct_sum_modules(m1: HomModule, a1: ModuleActions, m2: HomModule, a2: ModuleActions
                       ) -> tuple[HomModule, ModuleActions]:
    if not m1.space.same_grading(m2.space) or a1.arity != a2.arity or a1.lspace != a2.lspace:
        raise PreconditionError("modules are over different algebras or gradings")
    d1, d2 = m1.dim, m2.dim
    names1 = [f"{b.name}_1" for b in m1.space.basis]
    names2 = [f"{b.name}_2" for b in m2.space.basis]
    space = ColorSpace(m1.space.group, m1.space.chi,
                       list(zip(names1, m1.space.degrees)) + list(zip(names2, m2.space.degrees)))
    rows = [[Fraction(0)] * (d1 + d2) for _ in range(d1 + d2)]
    for i in range(d1):
        for j in range(d1):
            rows[i][j] = m1.alpha.matrix[i, j]
    for i in range(d2):
        for j in range(d2):
            rows[d1 + i][d1 + j] = m2.alpha.matrix[i, j]
    alpha = HomogeneousMap(space, Matrix(rows, d1 + d2))
    tables = []
    for slot in range(a1.arity):
        t = {}
        for key, val in a1.tables[slot].items():
            t[key] = tuple(val) + (Fraction(0),) * d2
        for key, val in a2.tables[slot].items():
            k2 = tuple(k + d1 if p == slot else k for p, k in enumerate(key))
            t[k2] = (Fraction(0),) * d1 + tuple(val)
        tables.append(t)
    return HomModule(space, alpha), ModuleActions(a1.lspace, space, a1.arity, tables)


def zero_module(alg: HomColorAlgebra, space: ColorSpace | None = None) -> tuple[HomModule, ModuleActions]:
    space = space or ColorSpace(alg.space.group, alg.space.chi, [])
    return HomModule(space), ModuleActions.zero(alg.space, space, alg.arity)


# ---------------------------------------------------------------------------
# axioms


def _witness(mspace, diff, **fields):
    v = to_dense(diff, mspace.dim)
    w = dict(fields)
    w["residual"] = v
    w["residual_text"] = mspace.format_vector(v)
    return w


def _names_key(lspace, mspace, key, slot):
    return tuple(mspace.names[k] if p == slot else lspace.names[k] for p, k in enumerate(key))


def _axiom_ab(alg: HomColorAlgebra, mod: HomModule, acts: ModuleActions):
    """Sign rules for swaps of neighbouring L arguments (a) and of m with its right neighbour (b)."""
    lsp, msp = alg.space, mod.space
    n = acts.arity
    out = []
    for slot in range(n):
        for key in _all_keys(lsp.dim, msp.dim, n, slot):
            here = acts.basis_sparse(slot, key)
            for p in range(n - 1):
                q = p + 1
                if p != slot and q != slot:
                    u, v = key[p], key[q]
                    swapped = key[:p] + (v, u) + key[q + 1:]
                    other = acts.basis_sparse(slot, swapped)
                    diff = dict(here)
                    _sparse_axpy(diff, lsp.eps_table[u][v], other)
                    if diff:
                        out.append(("a", _witness(msp, diff, slot=slot + 1, args=_names_key(lsp, msp, key, slot),
                                                  swap=(p + 1, q + 1))))
                        break
                elif p == slot:
                    m, x = key[p], key[q]
                    swapped = key[:p] + (x, m) + key[q + 1:]
                    other = acts.basis_sparse(slot + 1, swapped)
                    diff = dict(here)
                    _sparse_axpy(diff, lsp.eps(msp.degrees[m], lsp.degrees[x]), other)
                    if diff:
                        out.append(("b", _witness(msp, diff, slot=slot + 1, args=_names_key(lsp, msp, key, slot))))
            if len(out) > 50:
                return out
    return out


def _degree_sum(space, idx, start):
    d = start
    for i in idx:
        d = d + space.degrees[i]
    return d


def _axiom_c(alg, mod, acts, xs, ys):
    lsp, msp = alg.space, mod.space
    n = alg.arity
    acols = alg.alpha.sparse_columns()
    mcols = mod.alpha.sparse_columns()
    last = n - 1
    for x in xs:
        big_x = _degree_sum(lsp, x, lsp.zero_degree())
        ax = [acols[i] for i in x]
        for y in ys:
            ay = [acols[j] for j in y]
            for m in range(msp.dim):
                inner = acts.basis_sparse(last, y + (m,))
                acc = acts.eval_sparse(last, ax + [inner]) if inner else {}
                acc = dict(acc)
                big_y = lsp.zero_degree()
                for i in range(n - 1):
                    br = alg.basis_sparse(x + (y[i],))
                    if br:
                        args = ay[:i] + [br] + ay[i + 1:] + [mcols[m]]
                        _sparse_axpy(acc, -lsp.eps(big_x, big_y), acts.eval_sparse(last, args))
                    big_y = big_y + lsp.degrees[y[i]]
                inner = acts.basis_sparse(last, x + (m,))
                if inner:
                    _sparse_axpy(acc, -lsp.eps(big_x, big_y), acts.eval_sparse(last, ay + [inner]))
                if acc:
                    return _witness(msp, acc, x=tuple(lsp.names[i] for i in x), y=tuple(lsp.names[j] for j in y),
                                    m=msp.names[m])
    return None


def _axiom_d(alg, mod, acts, xs, ys):
    lsp, msp = alg.space, mod.space
    n = alg.arity
    acols = alg.alpha.sparse_columns()
    mcols = mod.alpha.sparse_columns()
    pen = n - 2
    for x in xs:
        ax = [acols[i] for i in x]
        for m in range(msp.dim):
            big_x = _degree_sum(lsp, x, msp.degrees[m])
            for y in ys:
                ay = [acols[j] for j in y]
                br = alg.basis_sparse(y)
                acc = dict(acts.eval_sparse(pen, ax + [mcols[m], br])) if br else {}
                big_y = lsp.zero_degree()
                for i in range(n):
                    inner = acts.basis_sparse(pen, x + (m, y[i]))
                    if inner:
                        args = ay[:i] + [inner] + ay[i + 1:]
                        _sparse_axpy(acc, -lsp.eps(big_x, big_y), acts.eval_sparse(i, args))
                    big_y = big_y + lsp.degrees[y[i]]
                if acc:
                    return _witness(msp, acc, x=tuple(lsp.names[i] for i in x), m=msp.names[m],
                                    y=tuple(lsp.names[j] for j in y))
    return None


def _ordered(space, k):
    return list(product(range(space.dim), repeat=k))


def check_module(alg: HomColorAlgebra, mod: HomModule, acts: ModuleActions, exhaustive: bool = False) -> Verdict:
    """Axioms a)-d). Once a) and b) hold, c) and d) are scanned on canonical L tuples
    (both sides transform alike under reordering); ``exhaustive`` scans every ordering."""
    if not mod.space.same_grading(alg.space):
        raise PreconditionError("module and algebra use different gradings")
    if acts.arity != alg.arity or acts.lspace != alg.space or acts.mspace != mod.space:
        raise PreconditionError("actions do not match the algebra and module")
    n = alg.arity
    violations = []
    ab = _axiom_ab(alg, mod, acts)
    for axiom, w in ab:
        violations.append({"axiom": axiom, **w})
    lsp = alg.space
    canonical = not ab and not exhaustive
    xs_c = list(canonical_tuples(lsp, n - 1)) if canonical else _ordered(lsp, n - 1)
    ys_c = list(canonical_tuples(lsp, n - 1)) if canonical else _ordered(lsp, n - 1)
    w = _axiom_c(alg, mod, acts, xs_c, ys_c)
    if w:
        violations.append({"axiom": "c", **w})
    xs_d = list(canonical_tuples(lsp, n - 2)) if canonical else _ordered(lsp, n - 2)
    ys_d = list(canonical_tuples(lsp, n)) if canonical else _ordered(lsp, n)
    w = _axiom_d(alg, mod, acts, xs_d, ys_d)
    if w:
        violations.append({"axiom": "d", **w})
    return Verdict("module", not violations, violations[0] if violations else None, violations,
                   [AXIOM_B_NOTE, AXIOM_D_NOTE])


# ---------------------------------------------------------------------------
# semidirect sum


def semidirect_sum(alg: HomColorAlgebra, mod: HomModule, acts: ModuleActions, checked: bool = True
                   ) -> HomColorAlgebra:
    """L + M with the bracket of L, omega_i on tuples with one module entry, zero otherwise."""
    if not alg.space.group.is_trivial:
        raise PreconditionError("the semidirect sum is defined here for the trivial grading only")
    if checked:
        v = check_module(alg, mod, acts)
        if not v:
            raise PreconditionError(f"actions fail the module axioms: {v.witness}")
    dl, dm = alg.dim, mod.dim
    lnames = list(alg.space.names)
    mnames = _suffix_names(mod.space.names, "_m", set(lnames))
    g = alg.space.group
    space = ColorSpace(g, alg.space.chi, [(nm, g.zero()) for nm in lnames + mnames])
    n = alg.arity
    consts = {}
    for key in canonical_tuples(space, n):
        mpos = [p for p, k in enumerate(key) if k >= dl]
        if not mpos:
            val = to_dense(alg.basis_sparse(key), dl) + (Fraction(0),) * dm
        elif len(mpos) == 1:
            p = mpos[0]
            k2 = tuple(k - dl if q == p else k for q, k in enumerate(key))
            val = (Fraction(0),) * dl + to_dense(acts.basis_sparse(p, k2), dm)
        else:
            continue
        if any(val):
            consts[key] = val
    rows = [[Fraction(0)] * (dl + dm) for _ in range(dl + dm)]
    for i in range(dl):
        for j in range(dl):
            rows[i][j] = alg.alpha.matrix[i, j]
    for i in range(dm):
        for j in range(dm):
            rows[dl + i][dl + j] = mod.alpha.matrix[i, j]
    return HomColorAlgebra(space, NAryBracket(space, n, consts), HomogeneousMap(space, Matrix(rows, dl + dm)),
                           f"{alg.name}+M" if alg.name else "")
