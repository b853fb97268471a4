import random
from fractions import Fraction

import pytest

from conftest import golden
from homcolor.algebra import (
    HomogeneousMap, NormalizationError, PreconditionError, bracket_eval, is_hom_lie_color,
)
from homcolor.constructions import (
    CommAssocAlgebra, averaging_twist_single, check_averaging, check_semi_morphism, find_endomorphisms,
    reduce_by_element, semimorphism_twist, tensor_product, twist_power, untwist, yau_twist, yau_twist_report,
)
from homcolor.fixtures import a4, a5, f1, f2_alpha, f2_base, f2_scaling, swap12, zero_bracket
from homcolor.structure import (
    GradedSubspace, bracket_span, center, centralizer, check_hom_ideal, check_hom_subalgebra, check_perfect,
    derived_sequence, descending_central_sequence,
)


def test_bracket_span_of_f1():
    alg = f1()
    full = GradedSubspace.full(alg.space)
    assert bracket_span(alg, full, full, full) == GradedSubspace.of_basis(alg.space, ["e1", "e2"])


def test_sequences_and_centers_match_golden():
    for nm, alg in (("f1", f1()), ("f2-base", f2_base()), ("zero2", zero_bracket(2, 2)), ("a4", a4())):
        g = golden(nm)
        assert [s.dim for s in derived_sequence(alg)] == g["derived_dims"], nm
        assert [s.dim for s in descending_central_sequence(alg)] == g["lcs_dims"], nm
        assert center(alg).dim == g["center_dim"], nm


def test_centralizer_of_f1():
    alg = f1()
    h = GradedSubspace.of_basis(alg.space, ["e3", "e4"])
    assert centralizer(alg, h).dim == golden("misc")["f1_centralizer_e3_e4_dim"] == 2


def test_f1_derived_ideal_is_not_alpha_stable():
    alg = f1()
    h = GradedSubspace.of_basis(alg.space, ["e1", "e2"])
    v = check_hom_ideal(alg, h)
    assert not v
    assert v.witness["element"] == "e1" and v.witness["image_text"] == "e3"
    assert not check_hom_subalgebra(alg, h)


def test_trivial_subspaces_are_ideals():
    for alg in (f1(), f2_base()):
        assert check_hom_ideal(alg, GradedSubspace.zero(alg.space))
        assert check_hom_ideal(alg, GradedSubspace.full(alg.space))


def test_perfect():
    alg = a4()
    assert check_perfect(alg, GradedSubspace.full(alg.space))
    assert not check_perfect(f1(), GradedSubspace.full(f1().space))


def test_reduce_f2_by_e1():
    base = f2_base()
    red = reduce_by_element(base, base.space.basis_vector("e1"))
    e = red.space.basis_vector
    assert red.arity == 3
    assert bracket_eval(red, e("e2"), e("e4"), e("e5")) == e("e3")
    assert bracket_eval(red, e("e3"), e("e4"), e("e5")) == e("e2")
    assert is_hom_lie_color(red)


def test_reduce_rejects_element_not_fixed_by_alpha():
    alg = f1()
    with pytest.raises(PreconditionError):
        reduce_by_element(alg, alg.space.basis_vector("e2"))


def test_reduce_rejects_non_identity_degree():
    base = f2_base()
    with pytest.raises(PreconditionError):
        reduce_by_element(base, base.space.basis_vector("e4"))


def test_a5_reduces_to_a4():
    alg = a5()
    red = reduce_by_element(alg, alg.space.basis_vector("e5"))
    assert alg.arity == 4 and red.arity == 3 and is_hom_lie_color(red)


def test_twist_by_endomorphisms_stays_valid():
    rng = random.Random(3)
    for alg in (f2_base(), a4()):
        for beta in find_endomorphisms(alg, rng, tries=20)[:4]:
            tw, mv = yau_twist_report(alg, beta)
            assert mv
            assert is_hom_lie_color(tw)


def test_twist_by_swap_reports_morphism_failure():
    base = f2_base()
    tw, mv = yau_twist_report(base, swap12(base.space))
    assert not mv
    assert tw.bracket == f2_alpha().bracket


def test_twist_power_and_untwist():
    alg = twist_power(a4(), 2)
    assert is_hom_lie_color(alg)
    base = f2_base()
    tw = yau_twist(base, f2_scaling(base.space))
    back = untwist(tw)
    assert back.bracket == base.bracket
    with pytest.raises(PreconditionError):
        untwist(f1())


def test_semimorphism_twist_slot_independent():
    alg = a4()
    beta = HomogeneousMap.scalar(alg.space, 3)
    assert check_semi_morphism(alg, beta)
    twists = [semimorphism_twist(alg, beta, slot) for slot in range(1, alg.arity + 1)]
    assert all(t.bracket == twists[0].bracket for t in twists)
    assert is_hom_lie_color(twists[0])


def test_single_slot_averaging_twist_can_fail_skew_symmetry():
    base = f2_base()
    sp = base.space
    idx = sp.index("e5")
    beta = HomogeneousMap.from_images(sp, {"e5": {"e5": 1}})
    assert beta.matrix.column(idx) == sp.basis_vector("e5")
    assert check_averaging(base, beta)
    # {e1,e2,e4,e5} = [e1,e2,e4,beta e5] = e3 but {e1,e2,e5,e4} = [e1,e2,e5,beta e4] = 0
    with pytest.raises(NormalizationError):
        averaging_twist_single(base, beta, slot=4)


def test_alpha_of_f1_is_not_averaging():
    alg = f1()
    assert bool(check_averaging(alg, alg.alpha)) == golden("misc")["f1_alpha_averaging"]


def test_tensor_with_dual_numbers():
    t = tensor_product(CommAssocAlgebra.dual_numbers(), f1())
    assert t.dim == 8 and t.arity == 3
    assert is_hom_lie_color(t)
    q = tensor_product(CommAssocAlgebra.rationals(), f2_base())
    assert q.dim == 5 and is_hom_lie_color(q)


def test_comm_assoc_validation():
    assert not CommAssocAlgebra.dual_numbers().violations()
    e = CommAssocAlgebra.dual_numbers().basis_vector(1)
    assert CommAssocAlgebra.dual_numbers().mul(e, e) == (Fraction(0), Fraction(0))
