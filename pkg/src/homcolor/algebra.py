"""Graded spaces, n-ary color brackets stored on canonical tuples, twisting maps and checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Iterable, Iterator, Mapping, Sequence

from .exactla import Matrix, Vector, format_rational, zero_vector
from .grading import Bicharacter, Degree, GradingError, GradingGroup, eps, validate_bicharacter

Sparse = dict  # dict[int, Fraction], nonzero entries only


class PreconditionError(ValueError):
    """An operation was called outside the hypotheses it requires."""


class NormalizationError(ValueError):
    """Raw bracket entries that contradict epsilon-skew-symmetry."""

    def __init__(self, key, message):
        super().__init__(message)
        self.key = key


# ---------------------------------------------------------------------------
# verdicts


def jsonify(obj):
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, Degree):
        return list(obj.coords)
    if isinstance(obj, Mapping):
        return {str(k): jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonify(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return str(obj)


@dataclass
class Verdict:
    """Outcome of a checker. Truthy iff the checked identities hold."""

    check: str
    ok: bool
    witness: dict | None = None
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        out = {"check": self.check, "ok": self.ok}
        if self.witness is not None:
            out["witness"] = jsonify(self.witness)
        if self.violations:
            out["violations"] = jsonify(self.violations)
        if self.notes:
            out["notes"] = list(self.notes)
        return out


# ---------------------------------------------------------------------------
# graded space


@dataclass(frozen=True)
class BasisElement:
    name: str
    degree: Degree


class ColorSpace:
    """A G-graded space with a homogeneous basis and a sign bicharacter."""

    def __init__(self, group: GradingGroup, chi: Bicharacter, basis: Iterable[tuple[str, Degree] | BasisElement]):
        if chi.group != group:
            raise GradingError("bicharacter is defined on a different group")
        elems = []
        for b in basis:
            if not isinstance(b, BasisElement):
                name, deg = b
                if not isinstance(deg, Degree):
                    deg = group.degree(deg)
                b = BasisElement(str(name), deg)
            if b.degree.group != group:
                raise GradingError(f"basis element {b.name} has a degree outside the grading group")
            elems.append(b)
        names = [b.name for b in elems]
        if len(set(names)) != len(names):
            raise ValueError(f"basis names are not unique: {names}")
        self.group = group
        self.chi = chi
        self.basis = tuple(elems)
        self.dim = len(elems)
        self.names = tuple(names)
        self.degrees = tuple(b.degree for b in elems)
        self._index = {n: i for i, n in enumerate(names)}
        self._eps_cache: dict = {}
        self.eps_table = tuple(tuple(eps(chi, a, b) for b in self.degrees) for a in self.degrees)
        self.odd = tuple(self.eps_table[i][i] == -1 for i in range(self.dim))
        blocks: dict[Degree, list[int]] = {}
        for i, d in enumerate(self.degrees):
            blocks.setdefault(d, []).append(i)
        self.blocks = {d: tuple(v) for d, v in blocks.items()}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown basis element {name!r}") from None

    def eps(self, a: Degree, b: Degree) -> int:
        key = (a.coords, b.coords)
        v = self._eps_cache.get(key)
        if v is None:
            v = self._eps_cache[key] = eps(self.chi, a, b)
        return v

    def zero_degree(self) -> Degree:
        return self.group.zero()

    def same_grading(self, other: "ColorSpace") -> bool:
        return self.group == other.group and self.chi.form == other.chi.form

    def degree_of(self, v: Sequence[Fraction]) -> Degree | None:
        """Degree of a nonzero homogeneous vector; None for zero; raises if inhomogeneous."""
        degs = {self.degrees[i] for i, c in enumerate(v) if c}
        if not degs:
            return None
        if len(degs) > 1:
            raise GradingError("vector is not homogeneous")
        return degs.pop()

    def is_homogeneous(self, v: Sequence[Fraction]) -> bool:
        return len({self.degrees[i] for i, c in enumerate(v) if c}) <= 1

    def basis_vector(self, i: int | str) -> Vector:
        if isinstance(i, str):
            i = self.index(i)
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return tuple(v)

    def vector(self, coeffs: Mapping[str, object] | Sequence) -> Vector:
        if isinstance(coeffs, Mapping):
            v = [Fraction(0)] * self.dim
            for name, c in coeffs.items():
                v[self.index(name)] += Fraction(c)
            return tuple(v)
        if len(coeffs) != self.dim:
            raise ValueError(f"vector of length {len(coeffs)} in a space of dimension {self.dim}")
        return tuple(Fraction(c) for c in coeffs)

    def format_vector(self, v: Sequence[Fraction]) -> str:
        terms = []
        for i, c in enumerate(v):
            if not c:
                continue
            if c == 1:
                t = self.names[i]
            elif c == -1:
                t = "-" + self.names[i]
            else:
                t = f"{format_rational(c)}*{self.names[i]}"
            terms.append(t)
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    def restrict_grading(self) -> "ColorSpace":
        """Same basis names with the trivial grading."""
        g = GradingGroup.trivial()
        return ColorSpace(g, Bicharacter.trivial(g), [(n, g.zero()) for n in self.names])

    def __eq__(self, other):
        return (isinstance(other, ColorSpace) and self.same_grading(other)
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.group, self.chi.form, self.basis))

    def __repr__(self):
        return f"ColorSpace(dim={self.dim}, G={self.group.describe()})"


def to_sparse(v: Sequence[Fraction]) -> Sparse:
    return {i: c for i, c in enumerate(v) if c}


def to_dense(s: Mapping[int, Fraction], n: int) -> Vector:
    v = [Fraction(0)] * n
    for i, c in s.items():
        v[i] = c
    return tuple(v)


def _sparse_axpy(acc: dict, c, s: Mapping[int, Fraction]) -> None:
    for i, x in s.items():
        y = acc.get(i, 0) + c * x
        if y:
            acc[i] = y
        else:
            acc.pop(i, None)


# ---------------------------------------------------------------------------
# homogeneous maps


class HomogeneousMap:
    """A linear map between graded spaces with a declared degree.

    ``matrix[i][j]`` is the coefficient of target basis i in the image of source
    basis j. The degree pattern is not enforced here; ``degree_violations``
    reports entries that break it.
    """

    __slots__ = ("source", "target", "matrix", "degree", "_cols")

    def __init__(self, source: ColorSpace, matrix: Matrix, degree: Degree | None = None,
                 target: ColorSpace | None = None):
        target = target or source
        if matrix.shape != (target.dim, source.dim):
            raise ValueError(f"map matrix has shape {matrix.shape}, expected {(target.dim, source.dim)}")
        self.source = source
        self.target = target
        self.matrix = matrix
        self.degree = degree if degree is not None else source.zero_degree()
        self._cols = None

    @classmethod
    def identity(cls, space: ColorSpace) -> "HomogeneousMap":
        return cls(space, Matrix.identity(space.dim))

    @classmethod
    def zero(cls, space: ColorSpace, degree: Degree | None = None, target: ColorSpace | None = None) -> "HomogeneousMap":
        t = target or space
        return cls(space, Matrix.zeros(t.dim, space.dim), degree, t)

    @classmethod
    def scalar(cls, space: ColorSpace, c) -> "HomogeneousMap":
        return cls(space, Matrix.identity(space.dim).scale(c))

    @classmethod
    def from_images(cls, space: ColorSpace, images: Mapping[str, Mapping[str, object]],
                    degree: Degree | None = None) -> "HomogeneousMap":
        """Build a map from {source name: {target name: coeff}}; unlisted basis elements map to 0."""
        cols = [zero_vector(space.dim)] * space.dim
        for src, img in images.items():
            cols[space.index(src)] = space.vector(img)
        return cls(space, Matrix.from_columns(cols, space.dim), degree)

    @classmethod
    def from_flat(cls, space: ColorSpace, flat: Sequence[Fraction], degree: Degree | None = None) -> "HomogeneousMap":
        n = space.dim
        return cls(space, Matrix([flat[i * n:(i + 1) * n] for i in range(n)], n), degree)

    def sparse_columns(self) -> list[Sparse]:
        if self._cols is None:
            rows = self.matrix.rows
            self._cols = [{i: rows[i][j] for i in range(self.target.dim) if rows[i][j]}
                          for j in range(self.source.dim)]
        return self._cols

    def apply(self, v: Sequence[Fraction]) -> Vector:
        return self.matrix.apply(v)

    def apply_sparse(self, s: Mapping[int, Fraction]) -> Sparse:
        cols = self.sparse_columns()
        acc: dict = {}
        for j, c in s.items():
            _sparse_axpy(acc, c, cols[j])
        return acc

    def __call__(self, v):
        return self.apply(v)

    def compose(self, other: "HomogeneousMap") -> "HomogeneousMap":
        """self after other."""
        return HomogeneousMap(other.source, self.matrix @ other.matrix, self.degree + other.degree, self.target)

    def __matmul__(self, other: "HomogeneousMap") -> "HomogeneousMap":
        return self.compose(other)

    def __add__(self, other: "HomogeneousMap") -> "HomogeneousMap":
        return HomogeneousMap(self.source, self.matrix + other.matrix, self.degree, self.target)

    def __sub__(self, other: "HomogeneousMap") -> "HomogeneousMap":
        return HomogeneousMap(self.source, self.matrix - other.matrix, self.degree, self.target)

    def scale(self, c) -> "HomogeneousMap":
        return HomogeneousMap(self.source, self.matrix.scale(c), self.degree, self.target)

    def __rmul__(self, c):
        return self.scale(c)

    def power(self, k: int) -> "HomogeneousMap":
        deg = self.source.zero_degree()
        for _ in range(abs(k)):
            deg = deg + (self.degree if k > 0 else -self.degree)
        return HomogeneousMap(self.source, self.matrix.power(k), deg, self.target)

    def inverse(self) -> "HomogeneousMap":
        return self.power(-1)

    def with_degree(self, degree: Degree) -> "HomogeneousMap":
        return HomogeneousMap(self.source, self.matrix, degree, self.target)

    def flatten(self) -> Vector:
        return self.matrix.flatten()

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    @property
    def is_even(self) -> bool:
        return self.degree.is_identity and not self.degree_violations()

    def degree_violations(self) -> list[tuple[int, int]]:
        out = []
        sd, td = self.source.degrees, self.target.degrees
        for i, row in enumerate(self.matrix.rows):
            for j, a in enumerate(row):
                if a and td[i] != sd[j] + self.degree:
                    out.append((i, j))
        return out

    def __eq__(self, other):
        return (isinstance(other, HomogeneousMap) and self.matrix == other.matrix
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"HomogeneousMap(degree={self.degree}, {self.matrix!r})"


# ---------------------------------------------------------------------------
# brackets


def canonical_tuples(space: ColorSpace, length: int, skip_zero: bool = True) -> Iterator[tuple[int, ...]]:
    """Weakly increasing index tuples; with ``skip_zero`` even-parity repeats are left out."""
    odd = space.odd
    for t in combinations_with_replacement(range(space.dim), length):
        if skip_zero and any(t[i] == t[i + 1] and not odd[t[i]] for i in range(length - 1)):
            continue
        yield t


def koszul_normalize(space: ColorSpace, tup: Sequence[int]) -> tuple[int, tuple[int, ...]] | None:
    """Sort by adjacent transpositions, each swap of (u, v) contributing -eps(u, v).

    Returns None when the sorted tuple repeats an even-parity index (the bracket
    is forced to vanish there).
    """
    t = list(tup)
    n = len(t)
    for i in t:
        if not 0 <= i < space.dim:
            raise IndexError(f"basis index {i} out of range for dimension {space.dim}")
    table = space.eps_table
    sign = 1
    for i in range(n):
        swapped = False
        for j in range(n - 1 - i):
            u, v = t[j], t[j + 1]
            if u > v:
                t[j], t[j + 1] = v, u
                sign = -sign * table[u][v]
                swapped = True
        if not swapped:
            break
    odd = space.odd
    for j in range(n - 1):
        if t[j] == t[j + 1] and not odd[t[j]]:
            return None
    return sign, tuple(t)


class NAryBracket:
    """Structure constants on canonical (weakly increasing) index tuples."""

    def __init__(self, space: ColorSpace, arity: int, constants: Mapping[tuple[int, ...], Sequence[Fraction]]):
        if arity < 2:
            raise ValueError(f"arity must be at least 2, got {arity}")
        self.space = space
        self.arity = arity
        clean = {}
        for key, val in constants.items():
            key = tuple(key)
            if len(key) != arity:
                raise ValueError(f"key {key} does not have length {arity}")
            if list(key) != sorted(key):
                raise NormalizationError(key, f"key {key} is not weakly increasing")
            if len(val) != space.dim:
                raise ValueError(f"value for {key} has length {len(val)}, expected {space.dim}")
            val = tuple(Fraction(x) for x in val)
            if not any(val):
                continue
            if koszul_normalize(space, key) is None:
                raise NormalizationError(key, f"key {key} repeats an even basis element but has a nonzero value")
            clean[key] = val
        self.constants = dict(sorted(clean.items()))

    def __eq__(self, other):
        return (isinstance(other, NAryBracket) and self.arity == other.arity
                and self.space == other.space and self.constants == other.constants)

    def is_zero(self) -> bool:
        return not self.constants


def load_normalize(space: ColorSpace, arity: int,
                   entries: Iterable[tuple[Sequence[int], Sequence[Fraction]]]) -> NAryBracket:
    """Fold raw (possibly permuted) bracket entries onto canonical keys.

    Conflicting values for one canonical key and nonzero values on tuples with
    a repeated even index raise ``NormalizationError``.
    """
    seen: dict[tuple[int, ...], tuple[Vector, tuple[int, ...]]] = {}
    for args, value in entries:
        args = tuple(args)
        if len(args) != arity:
            raise NormalizationError(args, f"entry {args} has {len(args)} arguments, arity is {arity}")
        value = tuple(Fraction(x) for x in value)
        if len(value) != space.dim:
            raise NormalizationError(args, f"value for {args} has length {len(value)}, expected {space.dim}")
        norm = koszul_normalize(space, args)
        names = tuple(space.names[i] for i in args)
        if norm is None:
            if any(value):
                raise NormalizationError(
                    args, f"[{', '.join(names)}] repeats an even basis element and must vanish")
            continue
        sign, key = norm
        canon = tuple(sign * x for x in value)
        if key in seen and seen[key][0] != canon:
            other = tuple(space.names[i] for i in seen[key][1])
            kn = ", ".join(space.names[i] for i in key)
            raise NormalizationError(
                key, f"conflicting values for [{kn}]: entry [{', '.join(other)}] and entry [{', '.join(names)}]")
        seen.setdefault(key, (canon, args))
    return NAryBracket(space, arity, {k: v for k, (v, _) in seen.items()})


class HomColorAlgebra:
    """(L, [.,...,.], eps, alpha): graded space, canonical structure constants, even twisting map."""

    def __init__(self, space: ColorSpace, bracket: NAryBracket, alpha: HomogeneousMap | Matrix | None = None,
                 name: str = ""):
        if bracket.space != space:
            raise ValueError("bracket is defined on a different space")
        if alpha is None:
            alpha = HomogeneousMap.identity(space)
        elif isinstance(alpha, Matrix):
            alpha = HomogeneousMap(space, alpha)
        if alpha.source != space or alpha.target != space:
            raise ValueError("twisting map must be an endomorphism of the underlying space")
        self.space = space
        self.bracket = bracket
        self.alpha = alpha
        self.name = name
        self._basis_cache: dict[tuple[int, ...], Sparse] = {}
        self._alpha_powers: dict[int, HomogeneousMap] = {1: alpha}

    @classmethod
    def from_entries(cls, space: ColorSpace, arity: int, entries, alpha=None, name: str = "") -> "HomColorAlgebra":
        return cls(space, load_normalize(space, arity, entries), alpha, name)

    @property
    def arity(self) -> int:
        return self.bracket.arity

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def constants(self):
        return self.bracket.constants

    def alpha_power(self, k: int) -> HomogeneousMap:
        if k not in self._alpha_powers:
            if k == 0:
                self._alpha_powers[0] = HomogeneousMap.identity(self.space)
            elif k < 0:
                try:
                    self._alpha_powers[k] = self.alpha.power(k)
                except ZeroDivisionError:
                    raise PreconditionError("twisting map is not invertible") from None
            else:
                self._alpha_powers[k] = self.alpha_power(k - 1).compose(self.alpha)
        return self._alpha_powers[k]

    def replace(self, *, bracket: NAryBracket | None = None, alpha: HomogeneousMap | None = None,
                name: str | None = None) -> "HomColorAlgebra":
        return HomColorAlgebra(self.space, bracket or self.bracket, alpha or self.alpha,
                               self.name if name is None else name)

    def basis_sparse(self, tup: Sequence[int]) -> Sparse:
        tup = tuple(tup)
        hit = self._basis_cache.get(tup)
        if hit is not None:
            return hit
        if len(tup) != self.arity:
            raise ValueError(f"bracket takes {self.arity} arguments, got {len(tup)}")
        norm = koszul_normalize(self.space, tup)
        if norm is None:
            out = {}
        else:
            sign, key = norm
            val = self.bracket.constants.get(key)
            out = {} if val is None else {i: sign * c for i, c in enumerate(val) if c}
        self._basis_cache[tup] = out
        return out

    def bracket_sparse(self, args: Sequence[Mapping[int, Fraction]]) -> Sparse:
        """Multilinear extension on sparse vectors."""
        if len(args) != self.arity:
            raise ValueError(f"bracket takes {self.arity} arguments, got {len(args)}")
        items = []
        for a in args:
            if not a:
                return {}
            items.append(list(a.items()))
        acc: dict = {}
        basis = self.basis_sparse
        for combo in product(*items):
            val = basis(tuple(i for i, _ in combo))
            if not val:
                continue
            c = Fraction(1)
            for _, x in combo:
                c *= x
            _sparse_axpy(acc, c, val)
        return acc

    def __repr__(self):
        return f"HomColorAlgebra({self.name or 'unnamed'}, n={self.arity}, dim={self.dim})"

    def __eq__(self, other):
        return (isinstance(other, HomColorAlgebra) and self.bracket == other.bracket
                and self.alpha.matrix == other.alpha.matrix and self.space == other.space)

    def __hash__(self):
        return hash((self.space, tuple(self.bracket.constants.items()), self.alpha.matrix))


def bracket_basis(alg: HomColorAlgebra, tup: Sequence[int]) -> Vector:
    return to_dense(alg.basis_sparse(tup), alg.dim)


def bracket_eval(alg: HomColorAlgebra, *vectors: Sequence[Fraction]) -> Vector:
    if len(vectors) == 1 and len(vectors[0]) == alg.arity and not isinstance(vectors[0][0], (int, Fraction)):
        vectors = tuple(vectors[0])
    for v in vectors:
        if len(v) != alg.dim:
            raise ValueError(f"argument of length {len(v)} in a space of dimension {alg.dim}")
    return to_dense(alg.bracket_sparse([to_sparse(v) for v in vectors]), alg.dim)


# ---------------------------------------------------------------------------
# checkers


def _names(space: ColorSpace, tup: Sequence[int]) -> tuple[str, ...]:
    return tuple(space.names[i] for i in tup)


def _residual_witness(space: ColorSpace, residual: Mapping[int, Fraction], **fields) -> dict:
    dense = to_dense(residual, space.dim)
    w = dict(fields)
    w["residual"] = dense
    w["residual_text"] = space.format_vector(dense)
    return w


def check_grading(alg: HomColorAlgebra) -> Verdict:
    space = alg.space
    violations = []
    for key, val in alg.constants.items():
        expected = space.zero_degree()
        for i in key:
            expected = expected + space.degrees[i]
        for j, c in enumerate(val):
            if c and space.degrees[j] != expected:
                violations.append({
                    "kind": "bracket", "args": _names(space, key), "coordinate": space.names[j],
                    "expected_degree": expected, "found_degree": space.degrees[j]})
    for i, j in alg.alpha.degree_violations():
        violations.append({
            "kind": "alpha", "source": space.names[j], "coordinate": space.names[i],
            "expected_degree": space.degrees[j], "found_degree": space.degrees[i]})
    if not alg.alpha.degree.is_identity:
        violations.append({"kind": "alpha", "message": "twisting map has non-identity degree"})
    return Verdict("grading", not violations, violations[0] if violations else None, violations)


def hom_jacobi_residual(alg: HomColorAlgebra, x: Sequence[int], y: Sequence[int]) -> Sparse:
    """LHS - RHS of the n-Hom-Jacobi identity at basis tuples x (length n-1) and y (length n)."""
    n = alg.arity
    space = alg.space
    acols = alg.alpha.sparse_columns()
    degs = space.degrees
    big_x = space.zero_degree()
    for i in x:
        big_x = big_x + degs[i]
    inner = alg.basis_sparse(y)
    lhs = alg.bracket_sparse([acols[i] for i in x] + [inner]) if inner else {}
    acc = dict(lhs)
    ay = [acols[j] for j in y]
    big_y = space.zero_degree()
    x = tuple(x)
    for i in range(n):
        mid = alg.basis_sparse(x + (y[i],))
        if mid:
            args = ay[:i] + [mid] + ay[i + 1:]
            term = alg.bracket_sparse(args)
            if term:
                _sparse_axpy(acc, -space.eps(big_x, big_y), term)
        big_y = big_y + degs[y[i]]
    return acc


def check_hom_jacobi(alg: HomColorAlgebra, first_only: bool = False) -> Verdict:
    """Scan canonical (x, y) tuple pairs; the residual is equivariant under argument permutations."""
    space = alg.space
    n = alg.arity
    ys = list(canonical_tuples(space, n))
    violations = []
    for x in canonical_tuples(space, n - 1):
        for y in ys:
            r = hom_jacobi_residual(alg, x, y)
            if r:
                violations.append(_residual_witness(space, r, x=_names(space, x), y=_names(space, y)))
                if first_only:
                    return Verdict("hom_jacobi", False, violations[0], violations)
    return Verdict("hom_jacobi", not violations, violations[0] if violations else None, violations)


def _bracket_of_images(alg: HomColorAlgebra, f: HomogeneousMap, dst: HomColorAlgebra, key) -> Sparse:
    cols = f.sparse_columns()
    return dst.bracket_sparse([cols[i] for i in key])


def check_multiplicative(alg: HomColorAlgebra) -> Verdict:
    a = alg.alpha
    for key in canonical_tuples(alg.space, alg.arity):
        lhs = a.apply_sparse(alg.basis_sparse(key))
        rhs = _bracket_of_images(alg, a, alg, key)
        diff = dict(lhs)
        _sparse_axpy(diff, -1, rhs)
        if diff:
            w = _residual_witness(alg.space, diff, args=_names(alg.space, key))
            w["alpha_of_bracket"] = to_dense(lhs, alg.dim)
            w["bracket_of_alpha"] = to_dense(rhs, alg.dim)
            return Verdict("multiplicative", False, w)
    return Verdict("multiplicative", True)


@dataclass(frozen=True)
class Classification:
    multiplicative: bool
    regular: bool
    involutive: bool

    def to_dict(self) -> dict:
        return {"multiplicative": self.multiplicative, "regular": self.regular, "involutive": self.involutive}


def classify(alg: HomColorAlgebra) -> Classification:
    mult = bool(check_multiplicative(alg))
    m = alg.alpha.matrix
    invertible = m.rank() == alg.dim
    involutive = (m @ m) == Matrix.identity(alg.dim)
    return Classification(mult, mult and invertible, involutive)


def _require_compatible(src: HomColorAlgebra, dst: HomColorAlgebra) -> None:
    if not src.space.same_grading(dst.space):
        raise PreconditionError("algebras use different grading groups or bicharacters")
    if src.arity != dst.arity:
        raise PreconditionError(f"arities differ: {src.arity} vs {dst.arity}")


def check_morphism(f: HomogeneousMap, src: HomColorAlgebra, dst: HomColorAlgebra) -> Verdict:
    _require_compatible(src, dst)
    if f.source != src.space or f.target != dst.space:
        raise PreconditionError("map does not go between the given algebras")
    if not f.degree.is_identity or f.degree_violations():
        raise PreconditionError("a morphism must be an even map")
    fa = f.matrix @ src.alpha.matrix
    af = dst.alpha.matrix @ f.matrix
    if fa != af:
        for j in range(src.dim):
            if fa.column(j) != af.column(j):
                diff = tuple(p - q for p, q in zip(fa.column(j), af.column(j)))
                w = {"condition": "f o alpha = alpha' o f", "basis": src.space.names[j],
                     "residual": diff, "residual_text": dst.space.format_vector(diff)}
                return Verdict("morphism", False, w)
    for key in canonical_tuples(src.space, src.arity):
        lhs = f.apply_sparse(src.basis_sparse(key))
        rhs = _bracket_of_images(src, f, dst, key)
        diff = dict(lhs)
        _sparse_axpy(diff, -1, rhs)
        if diff:
            w = _residual_witness(dst.space, diff, condition="f[x1,...,xn] = [f x1,...,f xn]'",
                                  args=_names(src.space, key))
            w["f_of_bracket"] = to_dense(lhs, dst.dim)
            w["bracket_of_f"] = to_dense(rhs, dst.dim)
            return Verdict("morphism", False, w)
    return Verdict("morphism", True)


def check_bracket_endomorphism(alg: HomColorAlgebra, f: HomogeneousMap) -> bool:
    """f[x1..xn] = [f x1..f xn] on canonical tuples, without the alpha-commutation condition."""
    for key in canonical_tuples(alg.space, alg.arity):
        lhs = f.apply_sparse(alg.basis_sparse(key))
        rhs = _bracket_of_images(alg, f, alg, key)
        if lhs != rhs:
            return False
    return True


def verify(alg: HomColorAlgebra) -> dict[str, Verdict]:
    """Every definitional check: bicharacter, grading, Hom-Jacobi. Skew-symmetry holds by storage."""
    chi_report = validate_bicharacter(alg.space.chi)
    out = {
        "bicharacter": Verdict("bicharacter", not chi_report, None,
                               [{"kind": v.kind, "entry": v.entry, "message": v.message} for v in chi_report]),
        "grading": check_grading(alg),
        "hom_jacobi": check_hom_jacobi(alg),
    }
    return out


def is_hom_lie_color(alg: HomColorAlgebra) -> bool:
    return all(v.ok for v in verify(alg).values())
