"""Seeded property runs of the construction theorems.

Each theorem is exercised on generated inputs across the shipped algebras; a case
passes when the constructed algebra passes full verification. Reports contain
no timings, so equal seeds give byte-identical JSON.
"""

from __future__ import annotations

import hashlib
import json
import random
from fractions import Fraction

from .algebra import HomColorAlgebra, HomogeneousMap, NormalizationError, PreconditionError, check_morphism, verify
from .constructions import (
    averaging_hom_twist, averaging_twist_double, averaging_twist_single, check_averaging, find_averaging_operators,
    find_endomorphisms, reduce_by_elements, semimorphism_twist, tensor_product, yau_twist,
)
from .derivations import compute_space
from .exactla import Matrix, Subspace, format_rational, nullspace
from .fixtures import all_algebras, dual_numbers, rationals

THEOREMS = ("twist", "reduce", "semimorphism", "averaging", "tensor")


def _flat(f: HomogeneousMap) -> list[str]:
    return [format_rational(c) for c in f.flatten()]


def _failed_checks(alg: HomColorAlgebra) -> list[str]:
    return sorted(name for name, v in verify(alg).items() if not v)


def _small(rng: random.Random) -> Fraction:
    return Fraction(rng.choice((-3, -2, -1, 1, 1, 2, 3)), rng.choice((1, 1, 1, 2)))


def _combo(rng: random.Random, maps: list[HomogeneousMap]) -> HomogeneousMap:
    acc = maps[0].scale(0)
    for f in maps:
        if rng.random() < 0.7:
            acc = acc + f.scale(_small(rng))
    return acc


def admissible_elements(alg: HomColorAlgebra) -> Subspace:
    """Identity-degree, alpha-fixed vectors: the admissible arguments of reduce_by_element."""
    n = alg.dim
    zero = alg.space.zero_degree()
    a = alg.alpha.matrix
    rows = [[a[i, j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    rows += [[Fraction(int(j == i)) for j in range(n)] for i in range(n) if alg.space.degrees[i] != zero]
    return nullspace(Matrix(rows, n))


class _Run:
    def __init__(self, name):
        self.name = name
        self.cases = []
        self.failures = []

    def record(self, desc: dict, build):
        self.cases.append(desc)
        try:
            out = build()
        except (NormalizationError, PreconditionError) as exc:
            self.failures.append({**desc, "error": f"{type(exc).__name__}: {exc}"})
            return
        bad = _failed_checks(out)
        if bad:
            self.failures.append({**desc, "failed": bad})

    def report(self) -> dict:
        digest = hashlib.sha256(json.dumps(self.cases, sort_keys=True).encode()).hexdigest()
        return {"cases": len(self.cases), "ok": not self.failures, "failures": self.failures,
                "case_digest": digest, "first_cases": self.cases[:3]}


def _verified(algs: dict) -> dict:
    return {nm: a for nm, a in algs.items() if all(verify(a).values())}


def run_suite(seed: int = 0, cases: int = 100, theorems=THEOREMS) -> dict:
    """Run every requested theorem on at least ``cases`` generated inputs."""
    rng = random.Random(seed)
    algs = _verified(all_algebras())
    names = sorted(algs)
    endos = {nm: find_endomorphisms(algs[nm], rng, tries=60) for nm in names}
    centroids = {}
    for nm in names:
        sp = compute_space(algs[nm], 0, "centroid")
        centroids[nm] = sp.maps(algs[nm].space.zero_degree())
    out = {"seed": seed, "theorems": {}}

    if "twist" in theorems:
        run = _Run("twist")
        i = 0
        while len(run.cases) < cases:
            nm = names[i % len(names)]
            i += 1
            pool = endos[nm]
            f = rng.choice(pool)
            if rng.random() < 0.5:
                f = f @ rng.choice(pool)
            alg = algs[nm]
            if not check_morphism(f, alg, alg):
                continue
            run.record({"algebra": nm, "beta": _flat(f)}, lambda: yau_twist(alg, f))
        out["theorems"]["twist"] = run.report()

    if "reduce" in theorems:
        run = _Run("reduce")
        pools = {}
        for nm in names:
            if algs[nm].arity >= 3:
                sub = admissible_elements(algs[nm])
                if sub.dim:
                    pools[nm] = sub.vectors()
        rnames = sorted(pools)
        i = 0
        while len(run.cases) < cases:
            nm = rnames[i % len(rnames)]
            i += 1
            alg = algs[nm]
            k = rng.randint(1, alg.arity - 2)
            xis = []
            for _ in range(k):
                v = [Fraction(0)] * alg.dim
                for b in pools[nm]:
                    c = _small(rng)
                    v = [p + c * q for p, q in zip(v, b)]
                xis.append(tuple(v))
            run.record({"algebra": nm, "xi": [[format_rational(c) for c in x] for x in xis]},
                       lambda: reduce_by_elements(alg, xis))
        out["theorems"]["reduce"] = run.report()

    if "semimorphism" in theorems:
        run = _Run("semimorphism")
        snames = [nm for nm in names if centroids[nm]]
        i = 0
        while len(run.cases) < cases:
            nm = snames[i % len(snames)]
            i += 1
            alg = algs[nm]
            beta = _combo(rng, centroids[nm])
            slot = rng.randint(1, alg.arity)
            run.record({"algebra": nm, "beta": _flat(beta), "slot": slot},
                       lambda: semimorphism_twist(alg, beta, slot))
        out["theorems"]["semimorphism"] = run.report()

    if "averaging" in theorems:
        run = _Run("averaging")
        ops = {}
        for nm in names:
            extra = [_combo(rng, centroids[nm]) for _ in range(6)] if centroids[nm] else []
            ops[nm] = find_averaging_operators(algs[nm], rng, tries=40, extra=extra)
        i = 0
        while len(run.cases) < cases:
            nm = names[i % len(names)]
            i += 1
            alg = algs[nm]
            beta = rng.choice(ops[nm])
            if not check_averaging(alg, beta):
                continue
            n = alg.arity
            kind = rng.choice(("single", "double", "hom"))
            if kind == "hom" and alg.alpha.matrix != Matrix.identity(alg.dim):
                kind = "single"
            if kind == "double":
                si, sj = sorted(rng.sample(range(1, n + 1), 2))
                desc = {"algebra": nm, "beta": _flat(beta), "kind": kind, "slots": [si, sj]}
                build = (lambda a, b, p, q: lambda: averaging_twist_double(a, b, p, q))(alg, beta, si, sj)
            else:
                s = rng.randint(1, n)
                desc = {"algebra": nm, "beta": _flat(beta), "kind": kind, "slots": [s]}
                fn = averaging_hom_twist if kind == "hom" else averaging_twist_single
                build = (lambda a, b, p, g: lambda: g(a, b, p))(alg, beta, s, fn)
            run.record(desc, build)
        out["theorems"]["averaging"] = run.report()

    if "tensor" in theorems:
        run = _Run("tensor")
        factors = {"Q": rationals(), "Q[t]/(t^2)": dual_numbers()}
        i = 0
        while len(run.cases) < cases:
            nm = names[i % len(names)]
            aname = ("Q", "Q[t]/(t^2)")[(i // len(names)) % 2]
            i += 1
            f = rng.choice(endos[nm])
            base = yau_twist(algs[nm], f)
            a = factors[aname]
            run.record({"algebra": nm, "twisted_by": _flat(f), "factor": aname},
                       lambda: tensor_product(a, base))
        out["theorems"]["tensor"] = run.report()

    out["ok"] = all(t["ok"] for t in out["theorems"].values())
    return out
