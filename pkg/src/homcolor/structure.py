"""Graded subspaces, bracket spans, derived and central sequences, centers and centralizers."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .algebra import ColorSpace, HomColorAlgebra, Verdict, canonical_tuples, to_dense
from .exactla import RowReducer, Subspace, nullspace_of_rows
from .grading import Degree


class GradedSubspace:
    """A subspace of an algebra's underlying space that is the sum of its homogeneous parts."""

    def __init__(self, ambient: ColorSpace, part: Subspace):
        if part.ambient_dim != ambient.dim:
            raise ValueError("subspace lives in a space of different dimension")
        self.ambient = ambient
        self.part = part
        self._homog = None

    @classmethod
    def span(cls, ambient: ColorSpace, vectors: Iterable[Sequence[Fraction]]) -> "GradedSubspace":
        return cls(ambient, Subspace.span(vectors, ambient.dim))

    @classmethod
    def of_basis(cls, ambient: ColorSpace, names: Iterable[str]) -> "GradedSubspace":
        return cls.span(ambient, [ambient.basis_vector(n) for n in names])

    @classmethod
    def zero(cls, ambient: ColorSpace) -> "GradedSubspace":
        return cls(ambient, Subspace.zero(ambient.dim))

    @classmethod
    def full(cls, ambient: ColorSpace) -> "GradedSubspace":
        return cls(ambient, Subspace.full(ambient.dim))

    @property
    def dim(self) -> int:
        return self.part.dim

    def component(self, d: Degree) -> Subspace:
        block = self.ambient.blocks.get(d, ())
        coord = Subspace.span([self.ambient.basis_vector(i) for i in block], self.ambient.dim)
        return self.part & coord

    def homogeneous_basis(self) -> list[tuple[Degree, tuple]]:
        """(degree, vector) pairs, degrees in sorted order, canonical basis within each degree."""
        if self._homog is None:
            out = []
            for d in sorted(self.ambient.blocks):
                out.extend((d, v) for v in self.component(d).vectors())
            self._homog = out
        return self._homog

    def is_graded(self) -> bool:
        return len(self.homogeneous_basis()) == self.dim

    @property
    def degrees(self) -> list[Degree]:
        return [d for d, _ in self.homogeneous_basis()]

    def dims_by_degree(self) -> dict[Degree, int]:
        out: dict[Degree, int] = {}
        for d, _ in self.homogeneous_basis():
            out[d] = out.get(d, 0) + 1
        return out

    def vectors(self) -> list[tuple]:
        return [v for _, v in self.homogeneous_basis()]

    def __contains__(self, v) -> bool:
        return tuple(v) in self.part

    def __le__(self, other: "GradedSubspace") -> bool:
        return self.part <= other.part

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedSubspace) and self.part == other.part

    def __hash__(self):
        return hash(self.part)

    def __repr__(self):
        return f"GradedSubspace(dim={self.dim}, {[self.ambient.format_vector(v) for v in self.vectors()]})"


def _check_graded(h: GradedSubspace) -> None:
    if not h.is_graded():
        raise ValueError("subspace is not graded: it is not spanned by homogeneous vectors")


def bracket_span(alg: HomColorAlgebra, *subspaces: GradedSubspace) -> GradedSubspace:
    """Span of all brackets of homogeneous basis vectors taken slot by slot from the arguments."""
    if len(subspaces) != alg.arity:
        raise ValueError(f"need {alg.arity} subspaces, got {len(subspaces)}")
    for s in subspaces:
        _check_graded(s)
    red = RowReducer(alg.dim)
    bases = [[{i: c for i, c in enumerate(v) if c} for v in s.vectors()] for s in subspaces]
    if any(not b for b in bases):
        return GradedSubspace.zero(alg.space)
    for combo in product(*bases):
        val = alg.bracket_sparse(list(combo))
        if val:
            red.add(to_dense(val, alg.dim))
            if red.rank == alg.dim:
                break
    rows, _ = red.rref_rows()
    return GradedSubspace.span(alg.space, rows)


def _sequence(alg: HomColorAlgebra, depth: int, step) -> list[GradedSubspace]:
    terms = [GradedSubspace.full(alg.space)]
    for _ in range(depth):
        nxt = step(terms[-1])
        terms.append(nxt)
        if nxt.dim == 0 or nxt == terms[-2]:
            break
    return terms


def derived_sequence(alg: HomColorAlgebra, depth: int = 10) -> list[GradedSubspace]:
    """L_0 = L, L_k = [L_{k-1}, ..., L_{k-1}]; stops at {0}, at a repeat, or at the depth."""
    return _sequence(alg, depth, lambda prev: bracket_span(alg, *([prev] * alg.arity)))


def descending_central_sequence(alg: HomColorAlgebra, depth: int = 10) -> list[GradedSubspace]:
    """L^0 = L, L^k = [L^{k-1}, L, ..., L]; same stopping rule as the derived sequence."""
    full = GradedSubspace.full(alg.space)
    return _sequence(alg, depth, lambda prev: bracket_span(alg, prev, *([full] * (alg.arity - 1))))


def _annihilator(alg: HomColorAlgebra, tails: Iterable[Sequence[dict]]) -> GradedSubspace:
    """{x : [x, t] = 0 for every tail t of n-1 sparse vectors}."""
    d = alg.dim
    red = RowReducer(d)
    for tail in tails:
        cols = [alg.bracket_sparse([{j: Fraction(1)}] + list(tail)) for j in range(d)]
        for k in range(d):
            row = [c.get(k, 0) for c in cols]
            if any(row):
                red.add(row)
                if red.rank == d:
                    return GradedSubspace.zero(alg.space)
    rows, _ = red.rref_rows()
    return GradedSubspace(alg.space, nullspace_of_rows(rows, d))


def center(alg: HomColorAlgebra) -> GradedSubspace:
    """{x : [x, y2, ..., yn] = 0 for all y}."""
    tails = ([{i: Fraction(1)} for i in t] for t in canonical_tuples(alg.space, alg.arity - 1))
    return _annihilator(alg, tails)


def centralizer(alg: HomColorAlgebra, h: GradedSubspace) -> GradedSubspace:
    """{x : [x, h, y3, ..., yn] = 0 for h in H and all y}, x taken in the first slot."""
    _check_graded(h)
    hb = [{i: c for i, c in enumerate(v) if c} for v in h.vectors()]
    if not hb:
        return GradedSubspace.full(alg.space)
    rest = list(canonical_tuples(alg.space, alg.arity - 2, skip_zero=False)) if alg.arity > 2 else [()]
    tails = ([hv] + [{i: Fraction(1)} for i in t] for hv in hb for t in rest)
    return _annihilator(alg, tails)


def _alpha_invariance(alg: HomColorAlgebra, h: GradedSubspace):
    # basis order, so the witness is the lowest-index failing element
    for v in sorted(h.vectors(), key=lambda v: [i for i, c in enumerate(v) if c]):
        img = alg.alpha.apply(v)
        if img not in h:
            return {"condition": "alpha(H) in H", "element": alg.space.format_vector(v),
                    "image": img, "image_text": alg.space.format_vector(img)}
    return None


def _bracket_containment(alg: HomColorAlgebra, h: GradedSubspace, slots: Sequence[GradedSubspace], condition: str):
    bases = [[(v, {i: c for i, c in enumerate(v) if c}) for v in s.vectors()] for s in slots]
    for combo in product(*bases):
        val = to_dense(alg.bracket_sparse([s for _, s in combo]), alg.dim)
        if any(val) and val not in h:
            return {"condition": condition, "args": tuple(alg.space.format_vector(v) for v, _ in combo),
                    "value": val, "value_text": alg.space.format_vector(val)}
    return None


def check_hom_subalgebra(alg: HomColorAlgebra, h: GradedSubspace) -> Verdict:
    if not h.is_graded():
        return Verdict("hom_subalgebra", False, {"condition": "H graded"})
    w = _alpha_invariance(alg, h) or _bracket_containment(alg, h, [h] * alg.arity, "[H,...,H] in H")
    return Verdict("hom_subalgebra", w is None, w)


def check_hom_ideal(alg: HomColorAlgebra, h: GradedSubspace) -> Verdict:
    if not h.is_graded():
        return Verdict("hom_ideal", False, {"condition": "H graded"})
    full = GradedSubspace.full(alg.space)
    w = _alpha_invariance(alg, h) or _bracket_containment(
        alg, h, [h] + [full] * (alg.arity - 1), "[H,L,...,L] in H")
    return Verdict("hom_ideal", w is None, w)


def check_perfect(alg: HomColorAlgebra, h: GradedSubspace) -> bool:
    return bracket_span(alg, *([h] * alg.arity)) == h
