"""New algebras from old: arity reduction, Yau-type twists, slot twists and tensor products."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations, product
from typing import Sequence

from .algebra import (
    ColorSpace, HomColorAlgebra, HomogeneousMap, NAryBracket, PreconditionError, Verdict,
    _names, _residual_witness, _sparse_axpy, canonical_tuples, check_bracket_endomorphism,
    check_morphism, check_multiplicative, classify, load_normalize, to_dense, to_sparse,
)
from .exactla import Matrix
from .grading import GradingError


# ---------------------------------------------------------------------------
# arity reduction


def _check_fixed_neutral(alg: HomColorAlgebra, xi: Sequence[Fraction], label: str) -> None:
    try:
        deg = alg.space.degree_of(xi)
    except GradingError:
        raise PreconditionError(f"{label} is not homogeneous") from None
    if deg is not None and not deg.is_identity:
        raise PreconditionError(f"{label} has degree {deg}, expected the identity degree")
    if tuple(alg.alpha.apply(xi)) != tuple(xi):
        raise PreconditionError(
            f"{label} is not fixed by the twisting map: alpha({label}) = {alg.space.format_vector(alg.alpha.apply(xi))}")


def reduce_by_element(alg: HomColorAlgebra, xi: Sequence[Fraction]) -> HomColorAlgebra:
    return reduce_by_elements(alg, [xi])


def reduce_by_elements(alg: HomColorAlgebra, xis: Sequence[Sequence[Fraction]]) -> HomColorAlgebra:
    """Fix the first k bracket slots to degree-e, alpha-fixed elements."""
    k = len(xis)
    if k < 1:
        raise ValueError("need at least one element to fix")
    if alg.arity - k < 2:
        raise PreconditionError(f"cannot fix {k} slots of a {alg.arity}-ary bracket")
    xis = [tuple(Fraction(c) for c in xi) for xi in xis]
    for j, xi in enumerate(xis):
        if len(xi) != alg.dim:
            raise ValueError(f"element {j + 1} has length {len(xi)}, expected {alg.dim}")
        _check_fixed_neutral(alg, xi, f"xi{j + 1}")
    fixed = [to_sparse(xi) for xi in xis]
    m = alg.arity - k
    consts = {}
    for key in canonical_tuples(alg.space, m):
        val = alg.bracket_sparse(fixed + [{i: Fraction(1)} for i in key])
        if val:
            consts[key] = to_dense(val, alg.dim)
    return HomColorAlgebra(alg.space, NAryBracket(alg.space, m, consts), alg.alpha,
                           f"{alg.name}/reduced" if alg.name else "")


# ---------------------------------------------------------------------------
# Yau-type twists


def yau_twist(alg: HomColorAlgebra, beta: HomogeneousMap) -> HomColorAlgebra:
    """Bracket beta[...] and twisting map beta o alpha.

    Built whether or not beta is an endomorphism; ``yau_twist_report`` pairs the
    result with the morphism check the construction relies on.
    """
    if not beta.is_even:
        raise PreconditionError("twisting by a map that is not even")
    consts = {key: beta.apply(val) for key, val in alg.constants.items()}
    return HomColorAlgebra(alg.space, NAryBracket(alg.space, alg.arity, consts), beta.compose(alg.alpha),
                           f"{alg.name}/twisted" if alg.name else "")


def yau_twist_report(alg: HomColorAlgebra, beta: HomogeneousMap) -> tuple[HomColorAlgebra, Verdict]:
    return yau_twist(alg, beta), check_morphism(beta, alg, alg)


def twist_power(alg: HomColorAlgebra, k: int) -> HomColorAlgebra:
    if k < 1:
        raise ValueError(f"power must be at least 1, got {k}")
    if not check_multiplicative(alg):
        raise PreconditionError("twist by powers of alpha needs a multiplicative algebra")
    return yau_twist(alg, alg.alpha_power(k))


def untwist(alg: HomColorAlgebra) -> HomColorAlgebra:
    """Twist by the inverse of alpha; the result has the identity as twisting map."""
    if not classify(alg).regular:
        raise PreconditionError("untwisting needs alpha to be an invertible endomorphism")
    inv = alg.alpha.inverse()
    out = yau_twist(alg, inv)
    return out.replace(alpha=HomogeneousMap.identity(alg.space))


# ---------------------------------------------------------------------------
# slot twists


def _slot_twisted(alg: HomColorAlgebra, slot_maps: dict[int, HomogeneousMap], label: str) -> HomColorAlgebra:
    """Bracket with the given maps applied in fixed slots, evaluated on every argument order.

    Each ordering is folded onto its canonical key, so a result that is not
    epsilon-skew-symmetric raises NormalizationError instead of being silently
    symmetrized.
    """
    n = alg.arity
    cols = {s: m.sparse_columns() for s, m in slot_maps.items()}
    entries = []
    for key in canonical_tuples(alg.space, n, skip_zero=False):
        for perm in sorted(set(permutations(key))):
            args = [cols[s][i] if s in cols else {i: Fraction(1)} for s, i in enumerate(perm)]
            entries.append((perm, to_dense(alg.bracket_sparse(args), alg.dim)))
    bracket = load_normalize(alg.space, n, entries)
    return HomColorAlgebra(alg.space, bracket, alg.alpha, f"{alg.name}/{label}" if alg.name else "")


def _check_slot(alg: HomColorAlgebra, slot: int) -> int:
    if not 1 <= slot <= alg.arity:
        raise ValueError(f"slot {slot} out of range 1..{alg.arity}")
    return slot - 1


def _commutes_with_alpha(alg: HomColorAlgebra, beta: HomogeneousMap):
    ba = beta.matrix @ alg.alpha.matrix
    ab = alg.alpha.matrix @ beta.matrix
    if ba == ab:
        return None
    for j in range(alg.dim):
        if ba.column(j) != ab.column(j):
            diff = tuple(p - q for p, q in zip(ba.column(j), ab.column(j)))
            return {"condition": "beta o alpha = alpha o beta", "basis": alg.space.names[j],
                    "residual": diff, "residual_text": alg.space.format_vector(diff)}


def check_semi_morphism(alg: HomColorAlgebra, beta: HomogeneousMap) -> Verdict:
    if not beta.is_even:
        return Verdict("semimorphism", False, {"condition": "beta even"})
    w = _commutes_with_alpha(alg, beta)
    if w:
        return Verdict("semimorphism", False, w)
    cols = beta.sparse_columns()
    # the first slot is not symmetric with the rest, so every ordering is tried
    for key in canonical_tuples(alg.space, alg.arity, skip_zero=False):
        for perm in sorted(set(permutations(key))):
            lhs = beta.apply_sparse(alg.basis_sparse(perm))
            rhs = alg.bracket_sparse([cols[perm[0]]] + [{i: Fraction(1)} for i in perm[1:]])
            diff = dict(lhs)
            _sparse_axpy(diff, -1, rhs)
            if diff:
                return Verdict("semimorphism", False, _residual_witness(
                    alg.space, diff, condition="beta[x1,...,xn] = [beta x1, x2,...,xn]",
                    args=_names(alg.space, perm)))
    return Verdict("semimorphism", True)


def semimorphism_twist(alg: HomColorAlgebra, beta: HomogeneousMap, slot: int = 1) -> HomColorAlgebra:
    s = _check_slot(alg, slot)
    v = check_semi_morphism(alg, beta)
    if not v:
        raise PreconditionError(f"not a semi-morphism: {v.witness}")
    return _slot_twisted(alg, {s: beta}, f"semitwist{slot}")


def check_averaging(alg: HomColorAlgebra, beta: HomogeneousMap) -> Verdict:
    """beta[.. beta x_i ..] = [.. beta x_i .. beta x_j ..] for every ordered slot pair i != j.

    Both sides are evaluated on every argument order of each canonical tuple,
    since a single slot twist need not be skew-symmetric.
    """
    if not beta.is_even:
        return Verdict("averaging", False, {"condition": "beta even"})
    w = _commutes_with_alpha(alg, beta)
    if w:
        return Verdict("averaging", False, w)
    n = alg.arity
    cols = beta.sparse_columns()
    for key in canonical_tuples(alg.space, n, skip_zero=False):
        for perm in sorted(set(permutations(key))):
            plain = [{i: Fraction(1)} for i in perm]
            for i in range(n):
                once = list(plain)
                once[i] = cols[perm[i]]
                lhs = beta.apply_sparse(alg.bracket_sparse(once))
                for j in range(n):
                    if j == i:
                        continue
                    twice = list(once)
                    twice[j] = cols[perm[j]]
                    rhs = alg.bracket_sparse(twice)
                    diff = dict(lhs)
                    _sparse_axpy(diff, -1, rhs)
                    if diff:
                        return Verdict("averaging", False, _residual_witness(
                            alg.space, diff, condition="beta[..beta x_i..] = [..beta x_i..beta x_j..]",
                            args=_names(alg.space, perm), slots=(i + 1, j + 1)))
    return Verdict("averaging", True)


def averaging_twist_single(alg: HomColorAlgebra, beta: HomogeneousMap, slot: int = 1,
                           checked: bool = True) -> HomColorAlgebra:
    s = _check_slot(alg, slot)
    if checked:
        v = check_averaging(alg, beta)
        if not v:
            raise PreconditionError(f"not an averaging operator: {v.witness}")
    return _slot_twisted(alg, {s: beta}, f"avg{slot}")


def averaging_twist_double(alg: HomColorAlgebra, beta: HomogeneousMap, slot_i: int = 1, slot_j: int = 2,
                           checked: bool = True) -> HomColorAlgebra:
    si, sj = _check_slot(alg, slot_i), _check_slot(alg, slot_j)
    if si >= sj:
        raise ValueError(f"need slot_i < slot_j, got {slot_i}, {slot_j}")
    if checked:
        v = check_averaging(alg, beta)
        if not v:
            raise PreconditionError(f"not an averaging operator: {v.witness}")
    return _slot_twisted(alg, {si: beta, sj: beta}, f"avg{slot_i}{slot_j}")


def averaging_hom_twist(alg: HomColorAlgebra, beta: HomogeneousMap, slot: int = 1) -> HomColorAlgebra:
    """From an algebra with identity twist: single-slot averaging bracket, twisting map beta."""
    if alg.alpha.matrix != Matrix.identity(alg.dim):
        raise PreconditionError("this construction starts from an algebra whose twisting map is the identity")
    return averaging_twist_single(alg, beta, slot).replace(alpha=beta)


# ---------------------------------------------------------------------------
# tensor products


class CommAssocAlgebra:
    """Finite-dimensional commutative associative algebra given by a dense product table."""

    def __init__(self, names: Sequence[str], table: Sequence[Sequence[Sequence]]):
        self.names = tuple(str(n) for n in names)
        self.dim = d = len(self.names)
        if len(set(self.names)) != d:
            raise ValueError("basis names are not unique")
        if len(table) != d or any(len(r) != d for r in table):
            raise ValueError(f"product table must be {d}x{d}")
        self.table = tuple(tuple(tuple(Fraction(c) for c in table[i][j]) for j in range(d)) for i in range(d))
        for i in range(d):
            for j in range(d):
                if len(self.table[i][j]) != d:
                    raise ValueError(f"product e{i + 1}e{j + 1} has the wrong length")
        v = self.violations()
        if v:
            raise ValueError(v[0])

    @classmethod
    def rationals(cls) -> "CommAssocAlgebra":
        return cls(["1"], [[[1]]])

    @classmethod
    def dual_numbers(cls) -> "CommAssocAlgebra":
        return cls(["1", "t"], [[[1, 0], [0, 1]], [[0, 1], [0, 0]]])

    def mul(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple:
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if b:
                    for k, c in enumerate(self.table[i][j]):
                        if c:
                            out[k] += a * b * c
        return tuple(out)

    def basis_vector(self, i: int) -> tuple:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def product(self, indices: Sequence[int]) -> tuple:
        acc = self.basis_vector(indices[0])
        for i in indices[1:]:
            acc = self.mul(acc, self.basis_vector(i))
        return acc

    def violations(self) -> list[str]:
        out = []
        d = self.dim
        for i in range(d):
            for j in range(i + 1, d):
                if self.table[i][j] != self.table[j][i]:
                    out.append(f"not commutative: {self.names[i]}*{self.names[j]} != {self.names[j]}*{self.names[i]}")
        for i, j, k in product(range(d), repeat=3):
            left = self.mul(self.table[i][j], self.basis_vector(k))
            right = self.mul(self.basis_vector(i), self.table[j][k])
            if left != right:
                out.append(f"not associative at ({self.names[i]}, {self.names[j]}, {self.names[k]})")
        return out

    def __eq__(self, other):
        return isinstance(other, CommAssocAlgebra) and self.names == other.names and self.table == other.table


def tensor_name(a: str, x: str) -> str:
    return f"{a}(x){x}"


def tensor_product(a: CommAssocAlgebra, alg: HomColorAlgebra) -> HomColorAlgebra:
    """A (x) L with degrees from L, bracket a1...an (x) [x1..xn] and twist id (x) alpha.

    Basis pair (a_i, x_j) has index i * dim(L) + j.
    """
    dl = alg.dim
    sp = alg.space
    space = ColorSpace(sp.group, sp.chi,
                       [(tensor_name(an, b.name), b.degree) for an in a.names for b in sp.basis])
    n = alg.arity
    consts = {}
    for key in canonical_tuples(space, n):
        ai = [k // dl for k in key]
        xj = [k % dl for k in key]
        br = alg.basis_sparse(xj)
        if not br:
            continue
        coeff = a.product(ai)
        val = [Fraction(0)] * space.dim
        for p, c in enumerate(coeff):
            if c:
                for q, y in br.items():
                    val[p * dl + q] += c * y
        if any(val):
            consts[key] = tuple(val)
    am = alg.alpha.matrix
    rows = [[Fraction(0)] * space.dim for _ in range(space.dim)]
    for p in range(a.dim):
        for i in range(dl):
            for j in range(dl):
                rows[p * dl + i][p * dl + j] = am[i, j]
    alpha = HomogeneousMap(space, Matrix(rows, space.dim))
    name = f"{'(x)'.join(['A', alg.name]) if alg.name else ''}"
    return HomColorAlgebra(space, NAryBracket(space, n, consts), alpha, name)


def tensor_map(a: CommAssocAlgebra, alg: HomColorAlgebra, f: Matrix, phi: HomogeneousMap,
               space: ColorSpace) -> HomogeneousMap:
    """f (x) phi on A (x) L, as a map of phi's degree."""
    dl = alg.dim
    rows = [[Fraction(0)] * space.dim for _ in range(space.dim)]
    pm = phi.matrix
    for p in range(a.dim):
        for q in range(a.dim):
            c = f[p, q]
            if not c:
                continue
            for i in range(dl):
                for j in range(dl):
                    if pm[i, j]:
                        rows[p * dl + i][q * dl + j] = c * pm[i, j]
    return HomogeneousMap(space, Matrix(rows, space.dim), space.group.degree(phi.degree.coords))


# ---------------------------------------------------------------------------
# map discovery for property tests


def _block_signed_permutation(alg: HomColorAlgebra, rng: random.Random) -> HomogeneousMap:
    n = alg.dim
    cols = [None] * n
    for block in alg.space.blocks.values():
        targets = list(block)
        rng.shuffle(targets)
        for src, dst in zip(block, targets):
            v = [Fraction(0)] * n
            v[dst] = Fraction(rng.choice((1, -1)))
            cols[src] = v
    return HomogeneousMap(alg.space, Matrix.from_columns(cols, n))


_DIAG_VALUES = (Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2), Fraction(-2), Fraction(0), Fraction(3))


def _diagonal(alg: HomColorAlgebra, rng: random.Random) -> HomogeneousMap:
    n = alg.dim
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = rng.choice(_DIAG_VALUES)
    return HomogeneousMap(alg.space, Matrix(rows, n))


def _block_sparse(alg: HomColorAlgebra, rng: random.Random) -> HomogeneousMap:
    n = alg.dim
    rows = [[Fraction(0)] * n for _ in range(n)]
    for block in alg.space.blocks.values():
        for i in block:
            for j in block:
                if rng.random() < 0.35:
                    rows[i][j] = Fraction(rng.choice((1, -1, 2)))
    return HomogeneousMap(alg.space, Matrix(rows, n))


def candidate_maps(alg: HomColorAlgebra, rng: random.Random, count: int) -> list[HomogeneousMap]:
    """Even maps drawn from signed block permutations, diagonals and sparse block matrices."""
    gens = (_block_signed_permutation, _diagonal, _block_sparse)
    return [gens[t % 3](alg, rng) for t in range(count)]


def find_endomorphisms(alg: HomColorAlgebra, rng: random.Random, tries: int = 300,
                       require_alpha_commuting: bool = True) -> list[HomogeneousMap]:
    """Distinct even maps passing the endomorphism identity (and alpha-commutation if requested)."""
    found: dict = {}
    pool = [HomogeneousMap.identity(alg.space), HomogeneousMap.zero(alg.space)] + candidate_maps(alg, rng, tries)
    for f in pool:
        if f.matrix in found:
            continue
        if require_alpha_commuting:
            ok = bool(check_morphism(f, alg, alg))
        else:
            ok = check_bracket_endomorphism(alg, f)
        if ok:
            found[f.matrix] = f
    return list(found.values())


def find_averaging_operators(alg: HomColorAlgebra, rng: random.Random, tries: int = 200,
                             extra: Sequence[HomogeneousMap] = ()) -> list[HomogeneousMap]:
    found: dict = {}
    pool = list(extra) + [HomogeneousMap.scalar(alg.space, c) for c in (1, 0, 2, -1)]
    pool += candidate_maps(alg, rng, tries)
    for f in pool:
        if f.matrix in found:
            continue
        if check_averaging(alg, f):
            found[f.matrix] = f
    return list(found.values())
