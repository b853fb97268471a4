"""Grading groups Z^r x Z_m1 x ... x Z_mt and sign-valued bicharacters."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class GradingError(ValueError):
    """Degree or bicharacter data that does not fit the grading group."""


@dataclass(frozen=True)
class GradingGroup:
    free_rank: int = 0
    torsion_moduli: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion_moduli", tuple(int(m) for m in self.torsion_moduli))
        if self.free_rank < 0:
            raise GradingError(f"free rank must be non-negative, got {self.free_rank}")
        for m in self.torsion_moduli:
            if m < 2:
                raise GradingError(f"torsion modulus must be >= 2, got {m}")

    @classmethod
    def trivial(cls) -> "GradingGroup":
        return cls(0, ())

    @property
    def rank(self) -> int:
        """Number of stored coordinates."""
        return self.free_rank + len(self.torsion_moduli)

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def degree(self, coords: Iterable[int] = ()) -> "Degree":
        coords = tuple(int(c) for c in coords)
        if not coords and self.rank:
            coords = (0,) * self.rank
        if len(coords) != self.rank:
            raise GradingError(f"degree {coords} has {len(coords)} coordinates, group needs {self.rank}")
        return Degree(self, self._reduce(coords))

    def zero(self) -> "Degree":
        return Degree(self, (0,) * self.rank)

    def _reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        r = self.free_rank
        return tuple(coords[:r]) + tuple(c % m for c, m in zip(coords[r:], self.torsion_moduli))

    def elements(self, bound: int = 1) -> Iterator["Degree"]:
        """All elements with free coordinates in [-bound, bound]; every torsion value."""
        from itertools import product

        ranges = [range(-bound, bound + 1)] * self.free_rank + [range(m) for m in self.torsion_moduli]
        for coords in product(*ranges):
            yield Degree(self, tuple(coords))

    def describe(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z_{m}" for m in self.torsion_moduli]
        return " x ".join(parts) if parts else "{e}"


@dataclass(frozen=True)
class Degree:
    group: GradingGroup
    coords: tuple[int, ...]

    def _check(self, other: "Degree") -> None:
        if not isinstance(other, Degree) or other.group != self.group:
            raise GradingError(f"degrees {self} and {other} live in different groups")

    def __add__(self, other: "Degree") -> "Degree":
        return degree_add(self, other)

    def __neg__(self) -> "Degree":
        return Degree(self.group, self.group._reduce(tuple(-c for c in self.coords)))

    def __sub__(self, other: "Degree") -> "Degree":
        self._check(other)
        return self + (-other)

    @property
    def is_identity(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        if len(self.coords) == 1:
            return str(self.coords[0])
        return "(" + ",".join(map(str, self.coords)) + ")"

    def __repr__(self) -> str:
        return f"Degree{self.coords}"

    def __lt__(self, other: "Degree") -> bool:
        return self.coords < other.coords


def degree_add(a: Degree, b: Degree) -> Degree:
    a._check(b)
    return Degree(a.group, a.group._reduce([x + y for x, y in zip(a.coords, b.coords)]))


def degree_sum(degrees: Iterable[Degree], group: GradingGroup) -> Degree:
    total = group.zero()
    for d in degrees:
        total = total + d
    return total


@dataclass(frozen=True)
class BicharacterViolation:
    kind: str
    entry: tuple[int, int]
    message: str


@dataclass(frozen=True)
class Bicharacter:
    """eps(a, b) = (-1)^(a^T B b) for an integer matrix B."""

    group: GradingGroup
    form: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        form = tuple(tuple(int(x) for x in row) for row in self.form)
        r = self.group.rank
        if not form and r:
            form = tuple((0,) * r for _ in range(r))
        if len(form) != r or any(len(row) != r for row in form):
            raise GradingError(f"bicharacter matrix must be {r}x{r}")
        object.__setattr__(self, "form", form)

    @classmethod
    def trivial(cls, group: GradingGroup) -> "Bicharacter":
        return cls(group, ())

    def exponent(self, a: Degree, b: Degree) -> int:
        if a.group != self.group or b.group != self.group:
            raise GradingError("degree does not belong to the bicharacter's group")
        total = 0
        for i, ai in enumerate(a.coords):
            if ai:
                row = self.form[i]
                for j, bj in enumerate(b.coords):
                    total += ai * row[j] * bj
        return total

    def __call__(self, a: Degree, b: Degree) -> int:
        return eps(self, a, b)

    @property
    def is_trivial(self) -> bool:
        return all(x % 2 == 0 for row in self.form for x in row)


def eps(chi: Bicharacter, a: Degree, b: Degree) -> int:
    return -1 if chi.exponent(a, b) % 2 else 1


def parity(chi: Bicharacter, a: Degree) -> str:
    return "even" if eps(chi, a, a) == 1 else "odd"


def is_odd(chi: Bicharacter, a: Degree) -> bool:
    return eps(chi, a, a) == -1


def validate_bicharacter(chi: Bicharacter) -> list[BicharacterViolation]:
    """Return every violated matrix condition; an empty list means the form is valid.

    Skew-symmetry needs B + B^T even. A torsion coordinate i of modulus m needs
    m * B[i][j] and m * B[j][i] even, otherwise the sign depends on the
    representative chosen for the coordinate.
    """
    B = chi.form
    r = chi.group.rank
    out = []
    for i in range(r):
        for j in range(i, r):
            if (B[i][j] + B[j][i]) % 2:
                out.append(BicharacterViolation(
                    "skew", (i + 1, j + 1),
                    f"B + B^T is odd at ({i + 1},{j + 1}); eps(a,b)eps(b,a)=1 fails"))
    fr = chi.group.free_rank
    for t, m in enumerate(chi.group.torsion_moduli):
        i = fr + t
        for j in range(r):
            if (m * B[i][j]) % 2:
                out.append(BicharacterViolation(
                    "torsion", (i + 1, j + 1),
                    f"{m}*B[{i + 1}][{j + 1}] is odd; sign not well defined modulo {m}"))
            if j != i and (m * B[j][i]) % 2:
                out.append(BicharacterViolation(
                    "torsion", (j + 1, i + 1),
                    f"{m}*B[{j + 1}][{i + 1}] is odd; sign not well defined modulo {m}"))
    return out


def sign_group_encoding(value: int) -> int:
    """Encode an element of the multiplicative group {-1, +1} as a Z_2 coordinate."""
    if value not in (-1, 1):
        raise GradingError(f"expected -1 or +1, got {value}")
    return 1 if value == -1 else 0
