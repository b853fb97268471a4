"""Exact rational matrices, row reduction, nullspaces and subspace lattice operations.

Elimination runs on integer rows (denominators cleared per row, rows kept
primitive by gcd division) and converts back to ``Fraction`` only for the final
reduced echelon form, which is the canonical representative of a row space.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]
Vector = tuple  # tuple[Fraction, ...]


class DimensionError(ValueError):
    pass


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; ints pass through. Floats are refused."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ValueError(f"rationals must be strings or integers, got {type(text).__name__}: {text!r}")
    s = text.strip()
    if "." in s or "e" in s.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_rational(q: Scalar) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def vec(values: Iterable[Scalar]) -> Vector:
    return tuple(Fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return tuple(v)


def vadd(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c: Scalar, v: Sequence[Fraction]) -> Vector:
    return tuple(c * a for a in v)


def is_zero(v: Sequence[Fraction]) -> bool:
    return not any(v)


class Matrix:
    """Dense immutable rational matrix. Columns are images of basis vectors when used as a map."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable[Scalar]], ncols: int | None = None):
        self.rows = tuple(tuple(Fraction(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        if self.rows:
            self.ncols = len(self.rows[0])
            if ncols is not None and ncols != self.ncols:
                raise DimensionError(f"expected {ncols} columns, got {self.ncols}")
        else:
            self.ncols = ncols or 0
        if any(len(r) != self.ncols for r in self.rows):
            raise DimensionError("ragged matrix rows")
        self._hash = None

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], nrows: int | None = None) -> "Matrix":
        if not columns:
            return cls.zeros(nrows or 0, 0)
        return cls([[columns[j][i] for j in range(len(columns))] for i in range(len(columns[0]))], len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        if not self.rows:
            return Matrix([[] for _ in range(self.ncols)], 0)
        if not self.ncols:
            return Matrix([], self.nrows)
        return Matrix(list(zip(*self.rows)), self.nrows)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.rows))
        return self._hash

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c: Scalar) -> "Matrix":
        c = Fraction(c)
        return Matrix([[c * a for a in r] for r in self.rows], self.ncols)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.columns()
            out = []
            for r in self.rows:
                nz = [(k, a) for k, a in enumerate(r) if a]
                out.append([sum((a * c[k] for k, a in nz), Fraction(0)) for c in cols])
            return Matrix(out, other.ncols)
        return self.apply(other)

    def apply(self, v: Sequence[Scalar]) -> Vector:
        if len(v) != self.ncols:
            raise DimensionError(f"vector of length {len(v)} for matrix with {self.ncols} columns")
        nz = [(k, x) for k, x in enumerate(v) if x]
        return tuple(sum((r[k] * x for k, x in nz), Fraction(0)) for r in self.rows)

    def power(self, k: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise DimensionError("power of a non-square matrix")
        if k < 0:
            return self.inverse().power(-k)
        out = Matrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def rank(self) -> int:
        return len(rref(self)[1])

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise DimensionError("inverse of a non-square matrix")
        aug = Matrix([list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.rows)], 2 * n)
        red, piv = rref(aug)
        if piv[:n] != list(range(n)) or len([p for p in piv if p < n]) != n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix([r[n:] for r in red.rows[:n]], n)

    def flatten(self) -> Vector:
        return tuple(a for r in self.rows for a in r)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(a) for a in r) for r in self.rows)
        return f"Matrix[{self.nrows}x{self.ncols}]({body})"


def _to_int_row(row: Sequence[Scalar]) -> list[int]:
    den = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = lcm(den, x.denominator)
    if den == 1:
        return [int(x) for x in row]
    return [int(x * den) for x in row]


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


class RowReducer:
    """Incremental fully reduced echelon basis over the integers.

    Rows are fed one at a time; dependent rows vanish. Each stored row is zero
    in every other stored row's pivot column, so a new row is reduced against
    the stored ones in any order.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivot_rows: dict[int, list[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def _reduce(self, row: list[int]) -> list[int]:
        for c, prow in self.pivot_rows.items():
            a = row[c]
            if a:
                p = prow[c]
                g = gcd(a, p)
                fa, fp = a // g, p // g
                row = _primitive([fp * x - fa * y for x, y in zip(row, prow)])
        return row

    def add(self, row: Sequence[Scalar]) -> bool:
        if len(row) != self.ncols:
            raise DimensionError(f"row of length {len(row)}, expected {self.ncols}")
        r = self._reduce(_primitive(_to_int_row(row)))
        for c, x in enumerate(r):
            if x:
                break
        else:
            return False
        if x < 0:
            r = [-y for y in r]
            x = -x
        for pc, prow in list(self.pivot_rows.items()):
            a = prow[c]
            if a:
                g = gcd(a, x)
                fa, fx = a // g, x // g
                nr = _primitive([fx * y - fa * z for y, z in zip(prow, r)])
                if nr[pc] < 0:
                    nr = [-y for y in nr]
                self.pivot_rows[pc] = nr
        self.pivot_rows[c] = r
        return True

    def contains(self, row: Sequence[Scalar]) -> bool:
        return not any(self._reduce(_primitive(_to_int_row(row))))

    def rref_rows(self) -> tuple[list[tuple[Fraction, ...]], list[int]]:
        pivots = sorted(self.pivot_rows)
        out = []
        for c in pivots:
            prow = self.pivot_rows[c]
            p = prow[c]
            out.append(tuple(Fraction(x, p) for x in prow))
        return out, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (same shape, zero rows last) and pivot columns."""
    red = RowReducer(m.ncols)
    for r in m.rows:
        red.add(r)
    rows, pivots = red.rref_rows()
    zero = (Fraction(0),) * m.ncols
    rows = rows + [zero] * (m.nrows - len(rows))
    return Matrix(rows, m.ncols), pivots


def _nullspace_from_reducer(red: RowReducer) -> "Subspace":
    n = red.ncols
    rows, pivots = red.rref_rows()
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, p in zip(rows, pivots):
            if r[f]:
                v[p] = -r[f]
        basis.append(v)
    return Subspace.span(basis, n)


def nullspace(m: Matrix) -> "Subspace":
    """Kernel {v : m v = 0} as a canonical subspace of Q^cols."""
    red = RowReducer(m.ncols)
    for r in m.rows:
        red.add(r)
    return _nullspace_from_reducer(red)


def nullspace_of_rows(rows: Iterable[Sequence[Scalar]], ncols: int) -> "Subspace":
    """Kernel of the matrix whose rows are streamed in; avoids materializing tall systems."""
    red = RowReducer(ncols)
    for r in rows:
        red.add(r)
    return _nullspace_from_reducer(red)


class Subspace:
    """Subspace of Q^n stored as its reduced row echelon basis (canonical)."""

    __slots__ = ("ambient_dim", "basis", "pivots", "_reducer")

    def __init__(self, ambient_dim: int, basis: Matrix, pivots: list[int], reducer: RowReducer | None = None):
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = tuple(pivots)
        self._reducer = reducer

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Scalar]], ambient_dim: int) -> "Subspace":
        red = RowReducer(ambient_dim)
        for v in vectors:
            red.add(v)
        rows, pivots = red.rref_rows()
        return cls(ambient_dim, Matrix(rows, ambient_dim), pivots, red)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls.span([], n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls.span(Matrix.identity(n).rows, n)

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def vectors(self) -> list[Vector]:
        return list(self.basis.rows)

    def _red(self) -> RowReducer:
        if self._reducer is None:
            red = RowReducer(self.ambient_dim)
            for r in self.basis.rows:
                red.add(r)
            self._reducer = red
        return self._reducer

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and subspace_eq(self, other)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis.rows))

    def __le__(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(contains(other, v) for v in self.basis.rows)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_intersect(self, other)

    def constraints(self) -> Matrix:
        """Rows c with c . v = 0 exactly on this subspace."""
        comp = nullspace(self.basis) if self.dim else Subspace.full(self.ambient_dim)
        return comp.basis

    def coordinates(self, v: Sequence[Scalar]) -> Vector:
        """Coefficients of v in the echelon basis; raises if v is not in the subspace."""
        if not contains(self, v):
            raise ValueError("vector is not in the subspace")
        return tuple(Fraction(v[p]) for p in self.pivots)

    def __repr__(self):
        return f"Subspace(dim={self.dim} in Q^{self.ambient_dim})"


def _check_ambient(s1: Subspace, s2: Subspace) -> None:
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionError(f"ambient dimensions differ: {s1.ambient_dim} vs {s2.ambient_dim}")


def subspace_sum(s1: Subspace, s2: Subspace) -> Subspace:
    _check_ambient(s1, s2)
    return Subspace.span(list(s1.basis.rows) + list(s2.basis.rows), s1.ambient_dim)


def subspace_intersect(s1: Subspace, s2: Subspace) -> Subspace:
    """Kernel of the stacked constraint matrices of the two subspaces."""
    _check_ambient(s1, s2)
    n = s1.ambient_dim
    return nullspace_of_rows(list(s1.constraints().rows) + list(s2.constraints().rows), n)


def contains(s: Subspace, v: Sequence[Scalar]) -> bool:
    if len(v) != s.ambient_dim:
        raise DimensionError(f"vector of length {len(v)} in Q^{s.ambient_dim}")
    if not any(v):
        return True
    return s._red().contains(v)


def subspace_eq(s1: Subspace, s2: Subspace) -> bool:
    _check_ambient(s1, s2)
    return s1.basis.rows == s2.basis.rows
