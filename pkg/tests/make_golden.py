"""Freeze reference values from the brute-force oracle into tests/golden/.

Run from the repository root: python3 tests/make_golden.py
Only the oracle and the raw fixture files are used.
"""

import json
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))

import oracles as O  # noqa: E402

ALGEBRAS = ["f1", "f1-alpha-id", "f2-base", "f2-alpha", "f2-beta", "a5", "a4", "a4-beta", "zero2"]
GOLDEN = HERE / "golden"


def rat(x):
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vec(v):
    return [rat(c) for c in v]


def algebra_record(name):
    raw = O.load(name)
    viol = O.jacobi_all(raw)
    derived, lcs = O.sequences(raw)
    mult = O.multiplicative_failures(raw)
    rec = {
        "hom_jacobi_ok": not viol,
        "hom_jacobi_violations": [
            {"x": [raw.names[i] for i in x], "y": [raw.names[i] for i in y], "residual": vec(r)}
            for (x, y), r in sorted(viol.items())
        ],
        "multiplicative": not mult,
        "alpha_rank": O.rank(raw.alpha_rows, raw.dim),
        "center_dim": len(O.center_basis(raw)),
        "derived_dims": derived,
        "lcs_dims": lcs,
        "towers": {},
    }
    for k in (0, 1, 2):
        rec["towers"][str(k)] = O.derivation_dims(raw, k)
    return rec


def main(names):
    GOLDEN.mkdir(exist_ok=True)
    for name in names:
        if name == "misc":
            continue
        print("freezing", name, flush=True)
        rec = algebra_record(name)
        (GOLDEN / f"{name}.json").write_text(json.dumps(rec, indent=1, sort_keys=True) + "\n")
    misc = {
        "assoc_centroid_dim": {
            nm: O.assoc_centroid_dim(json.loads((O.FIXTURES / f"{nm}.json").read_text()))
            for nm in ("dual-numbers", "rationals")
        },
        "f2_swap_morphism_failures": _swap_failures(),
        **_extras(),
    }
    (GOLDEN / "misc.json").write_text(json.dumps(misc, indent=1, sort_keys=True) + "\n")


def _extras():
    f1 = O.load("f1")
    e = {nm: i for i, nm in enumerate(f1.names)}
    ad = O.inner_map(f1, (e["e1"], e["e2"]))
    ad_deg = f1.dadd(f1.deg[0], f1.deg[1])
    a4 = O.load("a4")
    semi = O.semidirect_self(a4)
    # W = sum of Der_{alpha^k}, k = 0..2, per degree (F1 is not regular, so no k = -1)
    w = {}
    for deg in O.candidate_degrees(f1):
        vecs = []
        for k in (0, 1, 2):
            vecs += O.solve(f1, k, "der", deg)["basis"]
        w[O._degkey(deg)] = O.span_dim(vecs, f1.dim ** 2)
    return {
        "f1_centralizer_e3_e4_dim": len(O.center_basis(f1, partners=[f1.unit(e["e3"]), f1.unit(e["e4"])])),
        "f1_inner_e1_e2": {"matrix": [vec(r) for r in ad],
                           "derivation_k": {str(k): O.derivation_ok(f1, ad, ad_deg, k) for k in (0, 1, 2)}},
        "f1_alpha_averaging": O.averaging_ok(f1, f1.alpha_rows),
        "a4_self_semidirect": {"dim": semi.dim, "hom_jacobi_ok": not O.jacobi_all(semi),
                               "multiplicative": not O.multiplicative_failures(semi)},
        "f1_der_algebra_dims": w,
    }


def _swap_failures():
    """Ordered tuples t with swap[t] != [swap t] on the untwisted 4-ary fixture."""
    raw = O.load("f2-base")
    s = O.map_rows("swap12")
    out = []
    from itertools import product
    for t in product(range(raw.dim), repeat=raw.n):
        val = raw.basis_br(t)
        lhs = [sum(s[i][m] * val[m] for m in range(raw.dim)) for i in range(raw.dim)]
        rhs = raw.br([[s[i][j] for i in range(raw.dim)] for j in t])
        if lhs != rhs:
            out.append({"args": [raw.names[i] for i in t], "residual": vec([a - b for a, b in zip(lhs, rhs)])})
    return out


if __name__ == "__main__":
    main(sys.argv[1:] or ALGEBRAS)
