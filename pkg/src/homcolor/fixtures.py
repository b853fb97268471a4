"""Standard algebras used by the tests, the property runs and the shipped JSON files."""

from __future__ import annotations

from fractions import Fraction

from .algebra import ColorSpace, HomColorAlgebra, HomogeneousMap, NAryBracket
from .constructions import CommAssocAlgebra, reduce_by_element, yau_twist
from .grading import Bicharacter, GradingGroup


def _z2_space(degrees):
    g = GradingGroup(0, (2,))
    chi = Bicharacter(g, ((1,),))
    return ColorSpace(g, chi, [(f"e{i + 1}", (d,)) for i, d in enumerate(degrees)])


def f1() -> HomColorAlgebra:
    """Ternary, dim 4, graded by Z_2 with e1, e3 odd; alpha sends e1 -> e3, e2 -> e4."""
    sp = _z2_space((1, 0, 1, 0))
    alpha = HomogeneousMap.from_images(sp, {"e1": {"e3": 1}, "e2": {"e4": 1}})
    return HomColorAlgebra.from_entries(
        sp, 3, [((0, 1, 2), sp.vector({"e2": 1})), ((0, 1, 3), sp.vector({"e1": 1}))], alpha, "F1")


def f1_alpha_id() -> HomColorAlgebra:
    a = f1()
    return a.replace(alpha=HomogeneousMap.identity(a.space), name="F1-alpha-id")


def klein_space(names=("e1", "e2", "e3", "e4", "e5"), degrees=((0, 0), (0, 0), (0, 1), (1, 0), (1, 1))):
    g = GradingGroup(0, (2, 2))
    chi = Bicharacter(g, ((0, 1), (1, 0)))
    return ColorSpace(g, chi, list(zip(names, degrees)))


def f2_base() -> HomColorAlgebra:
    """4-ary, dim 5, graded by Z_2 x Z_2 with eps = (-1)^(i1 j2 - i2 j1); alpha = id."""
    sp = klein_space()
    v = sp.vector
    return HomColorAlgebra.from_entries(sp, 4, [
        ((1, 2, 3, 4), v({"e1": 1})),
        ((0, 2, 3, 4), v({"e2": 1})),
        ((0, 1, 3, 4), v({"e3": 1})),
    ], None, "F2")


def swap12(space: ColorSpace) -> HomogeneousMap:
    images = {nm: {nm: 1} for nm in space.names}
    images["e1"], images["e2"] = {"e2": 1}, {"e1": 1}
    return HomogeneousMap.from_images(space, images)


def f2_alpha() -> HomColorAlgebra:
    base = f2_base()
    return yau_twist(base, swap12(base.space)).replace(name="F2-alpha")


def f2_scaling(space: ColorSpace) -> HomogeneousMap:
    """diag(1, 1, 1, 2, 1/2), an automorphism of the 4-ary bracket above."""
    return HomogeneousMap.from_images(space, {"e1": {"e1": 1}, "e2": {"e2": 1}, "e3": {"e3": 1},
                                               "e4": {"e4": 2}, "e5": {"e5": Fraction(1, 2)}})


def f2_beta() -> HomColorAlgebra:
    base = f2_base()
    return yau_twist(base, f2_scaling(base.space)).replace(name="F2-beta")


def _trivial_space(n: int) -> ColorSpace:
    g = GradingGroup.trivial()
    return ColorSpace(g, Bicharacter.trivial(g), [(f"e{i + 1}", ()) for i in range(n)])


def a5() -> HomColorAlgebra:
    """The simple 4-Lie algebra of dim 5: [e1..^e_i..e5] = (-1)^i e_i, ungraded, alpha = id."""
    sp = _trivial_space(5)
    entries = []
    for i in range(5):
        key = tuple(j for j in range(5) if j != i)
        entries.append((key, sp.vector({f"e{i + 1}": (-1) ** (i + 1)})))
    return HomColorAlgebra.from_entries(sp, 4, entries, None, "A5")


def a4_reduced() -> HomColorAlgebra:
    """A5 with its first slot fixed to e5: a ternary Lie algebra on e1..e5 (e5 central)."""
    base = a5()
    return reduce_by_element(base, base.space.basis_vector("e5")).replace(name="A5/e5")


def a4() -> HomColorAlgebra:
    """Ternary Lie algebra on four generators: [e_a, e_b, e_c] = [e5, e_a, e_b, e_c] in A5."""
    red = a4_reduced()
    sp = _trivial_space(4)
    consts = {}
    for key, val in red.constants.items():
        if 4 in key:
            continue
        consts[key] = tuple(val[:4])
    return HomColorAlgebra(sp, NAryBracket(sp, 3, consts), None, "A4")


def a4_signed_permutation(space: ColorSpace) -> HomogeneousMap:
    """e1 -> e2, e2 -> -e1, fixing e3 and e4: a determinant-one automorphism of A4."""
    return HomogeneousMap.from_images(space, {"e1": {"e2": 1}, "e2": {"e1": -1}, "e3": {"e3": 1}, "e4": {"e4": 1}})


def a4_beta() -> HomColorAlgebra:
    base = a4()
    return yau_twist(base, a4_signed_permutation(base.space)).replace(name="A4-beta")


def zero_bracket(dim: int = 2, arity: int = 2) -> HomColorAlgebra:
    sp = _trivial_space(dim)
    return HomColorAlgebra(sp, NAryBracket(sp, arity, {}), None, f"zero{dim}")


def rationals() -> CommAssocAlgebra:
    return CommAssocAlgebra.rationals()


def dual_numbers() -> CommAssocAlgebra:
    return CommAssocAlgebra.dual_numbers()


def all_algebras() -> dict[str, HomColorAlgebra]:
    return {
        "f1": f1(), "f1-alpha-id": f1_alpha_id(), "f2-base": f2_base(), "f2-alpha": f2_alpha(),
        "f2-beta": f2_beta(), "a5": a5(), "a4": a4(), "a4-beta": a4_beta(), "zero2": zero_bracket(2, 2),
    }
