import copy
import json
from fractions import Fraction

import pytest

from conftest import FIXTURES, golden
from homcolor.algebra import (
    HomogeneousMap, NormalizationError, bracket_eval, check_grading, check_hom_jacobi, check_morphism,
    check_multiplicative, classify, hom_jacobi_residual, is_hom_lie_color, verify,
)
from homcolor.documents import (
    DocumentError, algebra_from_doc, algebra_to_doc, load_algebra, load_map, map_to_doc, read_json, save_algebra,
)
from homcolor.fixtures import all_algebras, f1, f1_alpha_id, f2_alpha, f2_base, swap12
from homcolor.grading import GradingError


def f1_doc():
    return read_json(FIXTURES / "f1.json")


def test_fixture_files_match_builders():
    files = {"f1": "f1.json", "f1-alpha-id": "f1-alpha-id.json", "f2-base": "f2-base.json",
             "f2-alpha": "f2-alpha.json", "a4": "a4.json", "zero2": "zero2.json"}
    algs = all_algebras()
    for nm, fn in files.items():
        loaded = load_algebra(FIXTURES / fn)
        assert loaded.bracket == algs[nm].bracket, nm
        assert loaded.alpha.matrix == algs[nm].alpha.matrix, nm


def test_round_trip(tmp_path):
    for nm, alg in all_algebras().items():
        path = tmp_path / f"{nm}.json"
        save_algebra(path, alg)
        back = load_algebra(path)
        assert back.bracket == alg.bracket
        assert back.alpha.matrix == alg.alpha.matrix
        assert algebra_to_doc(back) == algebra_to_doc(alg)


def test_f1_values_and_signs():
    alg = f1()
    sp = alg.space
    e = sp.basis_vector
    assert bracket_eval(alg, e("e1"), e("e2"), e("e3")) == e("e2")
    assert bracket_eval(alg, e("e2"), e("e1"), e("e3")) == tuple(-c for c in e("e2"))
    # [e3, e1, e2]: two transpositions, signs -eps(1,1) = +1 then -eps(1,0) = -1
    assert bracket_eval(alg, e("e3"), e("e1"), e("e2")) == tuple(-c for c in e("e2"))
    mixed = tuple(a + b for a, b in zip(e("e1"), e("e4")))
    assert bracket_eval(alg, mixed, e("e2"), e("e3")) == e("e2")


def test_permuted_entry_is_folded():
    doc = f1_doc()
    doc["brackets"] = [{"args": [3, 1, 2], "value": [{"basis": 2, "coeff": "-1"}]},
                       {"args": [1, 2, 4], "value": [{"basis": 1, "coeff": "1"}]}]
    assert algebra_from_doc(doc).bracket == f1().bracket


def test_conflicting_entries_rejected():
    doc = f1_doc()
    doc["brackets"].append({"args": [2, 1, 3], "value": [{"basis": 2, "coeff": "1"}]})
    with pytest.raises((NormalizationError, DocumentError)) as err:
        algebra_from_doc(doc)
    assert "conflicting" in str(err.value)


def test_forced_zero_entry_rejected():
    doc = f1_doc()
    doc["brackets"].append({"args": [2, 2, 1], "value": [{"basis": 1, "coeff": "1"}]})
    with pytest.raises((NormalizationError, DocumentError)):
        algebra_from_doc(doc)


def test_torsion_invalid_bicharacter_rejected():
    doc = f1_doc()
    doc["group"] = {"free_rank": 0, "torsion": [3]}
    with pytest.raises((DocumentError, GradingError)):
        algebra_from_doc(doc)


def test_odd_alpha_is_a_grading_violation():
    doc = f1_doc()
    doc["alpha"] = [["0", "1", "0", "0"], ["0", "0", "0", "0"], ["0", "0", "0", "0"], ["0", "0", "0", "0"]]
    try:
        alg = algebra_from_doc(doc)
    except (DocumentError, GradingError):
        return
    assert not check_grading(alg)


def test_jacobi_verdicts_match_golden():
    for nm, alg in all_algebras().items():
        assert bool(check_hom_jacobi(alg)) == golden(nm)["hom_jacobi_ok"], nm
        assert bool(check_multiplicative(alg)) == golden(nm)["multiplicative"], nm


def test_f1_alpha_id_residual():
    alg = f1_alpha_id()
    r = hom_jacobi_residual(alg, (0, 1), (1, 2, 3))
    assert r == {1: Fraction(-1)}
    assert not is_hom_lie_color(alg)
    assert set(verify(alg)) >= {"grading", "hom_jacobi"}


def test_swap_is_not_an_endomorphism():
    base = f2_base()
    v = check_morphism(swap12(base.space), base, base)
    assert not v
    assert list(v.witness["args"]) == golden("misc")["f2_swap_morphism_failures"][0]["args"]
    assert check_morphism(HomogeneousMap.identity(base.space), base, base)


def test_classification():
    c = classify(f1())
    assert not c.regular and not c.multiplicative
    # alpha is invertible but not multiplicative, so not regular
    c = classify(f2_alpha())
    assert not c.regular and c.involutive and not c.multiplicative
    c = classify(f2_base())
    assert c.regular and c.involutive and c.multiplicative


def test_map_document_round_trip(tmp_path):
    sp = f2_base().space
    s = swap12(sp)
    path = tmp_path / "m.json"
    path.write_text(json.dumps(map_to_doc(s)))
    assert load_map(path, sp).matrix == s.matrix
    assert load_map(FIXTURES / "swap12.json", sp).matrix == s.matrix


def test_bad_documents():
    doc = f1_doc()
    bad = copy.deepcopy(doc)
    del bad["arity"]
    with pytest.raises(DocumentError):
        algebra_from_doc(bad)
    bad = copy.deepcopy(doc)
    bad["brackets"][0]["args"] = [1, 2, 9]
    with pytest.raises((DocumentError, NormalizationError)):
        algebra_from_doc(bad)
