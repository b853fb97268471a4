"""Brute-force reference computations, written against the raw JSON documents.

Nothing here imports the package under test. Brackets are tabulated on every
ordered tuple, signs come from a product over inversions, every identity is
checked on every argument order, and linear algebra goes through sympy.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import permutations, product
from pathlib import Path

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def q(x):
    return Fraction(str(x))


class Raw:
    """An algebra as plain lists: degrees, sign form, twist columns, full ordered table."""

    def __init__(self, doc):
        self.torsion = list(doc["group"].get("torsion", []))
        self.free = doc["group"].get("free_rank", 0)
        self.B = [list(r) for r in doc.get("bicharacter", {}).get("matrix", [])]
        self.names = [b["name"] for b in doc["basis"]]
        self.deg = [tuple(b.get("degree", [])) for b in doc["basis"]]
        self.dim = len(self.names)
        self.n = doc["arity"]
        if "alpha" in doc:
            rows = [[q(x) for x in r] for r in doc["alpha"]]
        else:
            rows = [[Fraction(int(i == j)) for j in range(self.dim)] for i in range(self.dim)]
        self.alpha_rows = rows
        self.table = {}
        self._acache = {}
        for e in doc.get("brackets", []):
            v = [Fraction(0)] * self.dim
            for t in e.get("value", []):
                v[t["basis"] - 1] += q(t["coeff"])
            self._insert(tuple(a - 1 for a in e["args"]), v)

    # group arithmetic, done from scratch
    def dadd(self, a, b):
        out = []
        for p, (x, y) in enumerate(zip(a, b)):
            s = x + y
            if p >= self.free:
                s %= self.torsion[p - self.free]
            out.append(s)
        return tuple(out)

    def zero(self):
        return tuple(0 for _ in range(self.free + len(self.torsion)))

    def dsum(self, idx):
        acc = self.zero()
        for i in idx:
            acc = self.dadd(acc, self.deg[i])
        return acc

    def eps(self, a, b):
        e = sum(a[i] * self.B[i][j] * b[j] for i in range(len(a)) for j in range(len(b)))
        return -1 if e % 2 else 1

    def perm_sign(self, t, order):
        """Sign for reading t in the order given by position list ``order``."""
        s = 1
        pos = {p: r for r, p in enumerate(order)}
        for a in range(len(t)):
            for b in range(a + 1, len(t)):
                if pos[a] > pos[b]:
                    s *= -self.eps(self.deg[t[a]], self.deg[t[b]])
        return s

    def _insert(self, t, v):
        for order in permutations(range(len(t))):
            t2 = tuple(t[p] for p in order)
            s = self.perm_sign(t, order)
            w = tuple(s * c for c in v)
            old = self.table.get(t2)
            if old is not None and old != w:
                if t2 == t and all(c == 0 for c in [a + b for a, b in zip(old, w)]):
                    raise ValueError(f"entry {t} is forced to vanish but is nonzero")
                raise ValueError(f"conflicting entries at {t2}")
            self.table[t2] = w

    def basis_br(self, t):
        return self.table.get(tuple(t), (Fraction(0),) * self.dim)

    def alpha_col(self, j, k=1):
        key = (j, k)
        if key not in self._acache:
            v = [Fraction(int(i == j)) for i in range(self.dim)]
            for _ in range(k):
                v = [sum(self.alpha_rows[i][m] * v[m] for m in range(self.dim)) for i in range(self.dim)]
            self._acache[key] = v
        return list(self._acache[key])

    def br(self, vecs):
        out = [Fraction(0)] * self.dim
        supports = [[(i, c) for i, c in enumerate(v) if c] for v in vecs]
        for combo in product(*supports):
            val = self.table.get(tuple(i for i, _ in combo))
            if val:
                c = Fraction(1)
                for _, x in combo:
                    c *= x
                for p in range(self.dim):
                    if val[p]:
                        out[p] += c * val[p]
        return out

    def unit(self, i):
        return [Fraction(int(j == i)) for j in range(self.dim)]

    def odd(self, i):
        return self.eps(self.deg[i], self.deg[i]) == -1


def load(name):
    return Raw(json.loads((FIXTURES / f"{name}.json").read_text()))


def twisted(raw: Raw, beta_rows):
    """Copy of raw with bracket beta[...] and twist beta alpha."""
    out = Raw.__new__(Raw)
    out.__dict__.update(raw.__dict__)
    d = raw.dim
    out.table = {t: tuple(sum(beta_rows[i][m] * v[m] for m in range(d)) for i in range(d))
                 for t, v in raw.table.items()}
    out._acache = {}
    out.alpha_rows = [[sum(beta_rows[i][m] * raw.alpha_rows[m][j] for m in range(d)) for j in range(d)]
                      for i in range(d)]
    return out


def map_rows(name):
    doc = json.loads((FIXTURES / f"{name}.json").read_text())
    return [[q(x) for x in r] for r in doc["matrix"]]


# ---------------------------------------------------------------------------
# Hom-Jacobi over every ordering


def jacobi_residual(raw: Raw, x, y):
    n = raw.n
    ax = [raw.alpha_col(i) for i in x]
    lhs = raw.br(ax + [list(raw.basis_br(y))])
    X = raw.dsum(x)
    res = list(lhs)
    for i in range(n):
        Yi = raw.dsum(y[:i])
        args = [raw.alpha_col(j) for j in y]
        args[i] = list(raw.basis_br(tuple(x) + (y[i],)))
        term = raw.br(args)
        s = raw.eps(X, Yi)
        for p in range(raw.dim):
            res[p] -= s * term[p]
    return tuple(res)


def jacobi_all(raw: Raw):
    """{(x, y): residual} for every ordered pair with a nonzero residual."""
    out = {}
    for x in product(range(raw.dim), repeat=raw.n - 1):
        for y in product(range(raw.dim), repeat=raw.n):
            r = jacobi_residual(raw, x, y)
            if any(r):
                out[(x, y)] = r
    return out


def multiplicative_failures(raw: Raw):
    out = []
    for t in product(range(raw.dim), repeat=raw.n):
        lhs = [sum(raw.alpha_rows[i][m] * raw.basis_br(t)[m] for m in range(raw.dim)) for i in range(raw.dim)]
        rhs = raw.br([raw.alpha_col(j) for j in t])
        if lhs != rhs:
            out.append(t)
    return out


# ---------------------------------------------------------------------------
# sympy linear algebra


def _dm(rows, ncols):
    if not rows:
        return DomainMatrix.zeros((0, ncols), QQ)
    return DomainMatrix([[QQ(int(c.numerator), int(c.denominator)) for c in r] for r in rows], (len(rows), ncols), QQ)


def rank(rows, ncols):
    if not rows:
        return 0
    return _dm(rows, ncols).rank()


def nullspace(rows, ncols):
    """List of basis vectors (Fractions) of the kernel."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ns = _dm(rows, ncols).nullspace().to_Matrix()
    out = []
    for r in range(ns.rows):
        out.append([Fraction(int(ns[r, c].p), int(ns[r, c].q)) for c in range(ns.cols)])
    return out


def span_dim(vectors, ncols):
    return rank([list(v) for v in vectors], ncols)


# ---------------------------------------------------------------------------
# structure


def bracket_span_dim(raw: Raw, spaces):
    vals = []
    for combo in product(*spaces):
        vals.append(raw.br(list(combo)))
    return span_dim(vals, raw.dim), vals


def _basis_of(vecs, dim):
    """Independent subset of vecs."""
    out = []
    for v in vecs:
        if rank(out + [v], dim) > len(out):
            out.append(v)
    return out


def sequences(raw: Raw, depth=10):
    full = [raw.unit(i) for i in range(raw.dim)]
    derived = [full]
    lcs = [full]
    for _ in range(depth):
        _, vals = bracket_span_dim(raw, [derived[-1]] * raw.n)
        nxt = _basis_of(vals, raw.dim)
        derived.append(nxt)
        if not nxt or len(nxt) == len(derived[-2]):
            break
    for _ in range(depth):
        _, vals = bracket_span_dim(raw, [lcs[-1]] + [full] * (raw.n - 1))
        nxt = _basis_of(vals, raw.dim)
        lcs.append(nxt)
        if not nxt or len(nxt) == len(lcs[-2]):
            break
    return [len(s) for s in derived], [len(s) for s in lcs]


def center_basis(raw: Raw, partners=None):
    """Kernel of x -> [x, t] over every ordered tail t (optionally with slot 2 ranging over partners)."""
    d = raw.dim
    rows = []
    if partners is None:
        tails = [[raw.unit(i) for i in t] for t in product(range(d), repeat=raw.n - 1)]
    else:
        tails = [[h] + [raw.unit(i) for i in t] for h in partners for t in product(range(d), repeat=raw.n - 2)]
    for tail in tails:
        cols = [raw.br([raw.unit(j)] + tail) for j in range(d)]
        for c in range(d):
            rows.append([cols[j][c] for j in range(d)])
    return nullspace(rows, d)


# ---------------------------------------------------------------------------
# derivation-type spaces


def _pattern_ok(raw, i, j, d):
    return raw.dadd(raw.deg[j], d) == raw.deg[i]


def candidate_degrees(raw):
    out = {raw.zero()}
    for a in set(raw.deg):
        for b in set(raw.deg):
            neg = tuple((-x) % m if p >= raw.free else -x
                        for p, (x, m) in enumerate(zip(a, [0] * raw.free + raw.torsion)))
            out.add(raw.dadd(b, neg))
    return sorted(out)


def _unit_map(d, i, j):
    return (i, j)


def _apply_unit(raw, ij, v):
    i, j = ij
    out = [Fraction(0)] * raw.dim
    out[i] = v[j]
    return out


def _commute_rows(raw, nparts, nv_each):
    d = raw.dim
    A = raw.alpha_rows
    rows = []
    for part in range(nparts):
        for r in range(d):
            for c in range(d):
                row = [Fraction(0)] * (nparts * nv_each)
                for i in range(d):
                    row[part * nv_each + i * d + c] += A[r][i]
                for j in range(d):
                    row[part * nv_each + r * d + j] -= A[j][c]
                rows.append(row)
    return rows


def _pattern_rows(raw, nparts, deg):
    d = raw.dim
    nv = d * d
    rows = []
    for part in range(nparts):
        for i in range(d):
            for j in range(d):
                if not _pattern_ok(raw, i, j, deg):
                    row = [Fraction(0)] * (nparts * nv)
                    row[part * nv + i * d + j] = Fraction(1)
                    rows.append(row)
    return rows


def _pieces(raw, x, k, deg):
    """For every unit map E_ij: D[x] and each signed insertion term, as dense vectors."""
    d = raw.dim
    akx = [raw.alpha_col(i, k) for i in x]
    bx = list(raw.basis_br(x))
    lhs, terms = {}, {}
    for i in range(d):
        for j in range(d):
            lhs[(i, j)] = _apply_unit(raw, (i, j), bx)
            for p in range(raw.n):
                if x[p] != j:
                    continue
                args = list(akx)
                args[p] = raw.unit(i)
                s = raw.eps(deg, raw.dsum(x[:p]))
                terms[(p, i, j)] = [s * c for c in raw.br(args)]
    return lhs, terms


def _term(terms, p, i, j, d):
    return terms.get((p, i, j), [Fraction(0)] * d)


def solve(raw: Raw, k: int, kind: str, deg):
    """Dimension data of the given kind at one degree, with every argument order as a constraint."""
    d = raw.dim
    nv = d * d
    n = raw.n
    parts = {"der": 1, "centroid": 1, "quasicentroid": 1, "zder": 1, "qder": 2, "gder": n + 1}[kind]
    rows = _pattern_rows(raw, parts, deg) + _commute_rows(raw, parts, nv)
    for x in product(range(d), repeat=n):
        lhs, terms = _pieces(raw, x, k, deg)
        eqs = []  # each eq: list of (part, coefficient, kind of piece, p)
        if kind == "der":
            eqs.append([(0, 1, "L", None)] + [(0, -1, "T", p) for p in range(n)])
        elif kind == "centroid":
            eqs += [[(0, 1, "L", None), (0, -1, "T", p)] for p in range(n)]
        elif kind == "quasicentroid":
            eqs += [[(0, 1, "T", 0), (0, -1, "T", p)] for p in range(1, n)]
        elif kind == "zder":
            eqs.append([(0, 1, "L", None)])
            eqs += [[(0, 1, "T", p)] for p in range(n)]
        elif kind == "qder":
            eqs.append([(1, 1, "L", None)] + [(0, -1, "T", p) for p in range(n)])
        elif kind == "gder":
            eqs.append([(n, 1, "L", None)] + [(p, -1, "T", p) for p in range(n)])
        for eq in eqs:
            for c in range(d):
                row = [Fraction(0)] * (parts * nv)
                for part, coef, what, p in eq:
                    for i in range(d):
                        for j in range(d):
                            v = lhs[(i, j)] if what == "L" else _term(terms, p, i, j, d)
                            if v[c]:
                                row[part * nv + i * d + j] += coef * v[c]
                if any(row):
                    rows.append(row)
    ns = nullspace(rows, parts * nv)
    proj = span_dim([v[:nv] for v in ns], nv)
    return {"joint": len(ns), "dim": proj, "basis": ns}


def derivation_dims(raw: Raw, k: int):
    out = {}
    for kind in ("der", "centroid", "quasicentroid", "zder", "qder", "gder"):
        per = {}
        joint = {}
        for deg in candidate_degrees(raw):
            r = solve(raw, k, kind, deg)
            per[_degkey(deg)] = r["dim"]
            joint[_degkey(deg)] = r["joint"]
        out[kind] = per
        if kind in ("qder", "gder"):
            out[kind + "_joint"] = joint
    return out


def _degkey(deg):
    if len(deg) == 1:
        return str(deg[0])
    return "(" + ",".join(map(str, deg)) + ")"


# ---------------------------------------------------------------------------
# commutative associative centroid


def assoc_centroid_dim(doc):
    names = doc["basis"]
    d = len(names)
    table = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    for e in doc["products"]:
        i, j = (a - 1 for a in e["args"])
        for t in e["value"]:
            table[i][j][t["basis"] - 1] += q(t["coeff"])

    def mul(u, v):
        out = [Fraction(0)] * d
        for a in range(d):
            for b in range(d):
                for c in range(d):
                    out[c] += u[a] * v[b] * table[a][b][c]
        return out

    def unit(i):
        return [Fraction(int(j == i)) for j in range(d)]

    rows = []
    # f as unknown d x d matrix, f(e_j) = sum_i f[i][j] e_i; enumerate unit maps
    for a in range(d):
        for b in range(d):
            for c in range(d):
                for which in (0, 1):
                    row = []
                    for i in range(d):
                        for j in range(d):
                            def f(v):
                                return [v[j] if r == i else Fraction(0) for r in range(d)]
                            left = f(mul(unit(a), unit(b)))
                            right = mul(f(unit(a)), unit(b)) if which == 0 else mul(unit(a), f(unit(b)))
                            row.append(left[c] - right[c])
                    rows.append(row)
    return len(nullspace(rows, d * d))


# ---------------------------------------------------------------------------
# miscellany


def koszul(raw: Raw, t):
    """(sign, sorted tuple) by the inversion product, or None for a forced zero."""
    order = sorted(range(len(t)), key=lambda p: (t[p], p))
    s = raw.perm_sign(t, order)
    st = tuple(t[p] for p in order)
    for a in range(len(st) - 1):
        if st[a] == st[a + 1] and not raw.odd(st[a]):
            return None
    return s, st


def averaging_ok(raw: Raw, beta_rows):
    d = raw.dim
    n = raw.n

    def beta(v):
        return [sum(beta_rows[i][m] * v[m] for m in range(d)) for i in range(d)]

    A = raw.alpha_rows
    ba = [[sum(beta_rows[i][m] * A[m][j] for m in range(d)) for j in range(d)] for i in range(d)]
    ab = [[sum(A[i][m] * beta_rows[m][j] for m in range(d)) for j in range(d)] for i in range(d)]
    if ba != ab:
        return False
    for t in product(range(d), repeat=n):
        for i in range(n):
            once = [raw.unit(a) for a in t]
            once[i] = beta(once[i])
            lhs = beta(raw.br(once))
            for j in range(n):
                if j == i:
                    continue
                twice = list(once)
                twice[j] = beta(twice[j])
                if lhs != raw.br(twice):
                    return False
    return True


def derivation_ok(raw: Raw, D_rows, deg, k):
    d = raw.dim

    def Dv(v):
        return [sum(D_rows[i][m] * v[m] for m in range(d)) for i in range(d)]

    A = raw.alpha_rows
    if [[sum(A[i][m] * D_rows[m][j] for m in range(d)) for j in range(d)] for i in range(d)] != \
            [[sum(D_rows[i][m] * A[m][j] for m in range(d)) for j in range(d)] for i in range(d)]:
        return False
    for x in product(range(d), repeat=raw.n):
        lhs = Dv(list(raw.basis_br(x)))
        acc = [Fraction(0)] * d
        for p in range(raw.n):
            args = [raw.alpha_col(i, k) for i in x]
            args[p] = Dv(raw.unit(x[p]))
            s = raw.eps(deg, raw.dsum(x[:p]))
            t = raw.br(args)
            acc = [a + s * b for a, b in zip(acc, t)]
        if lhs != acc:
            return False
    return True


def semidirect_self(raw: Raw) -> Raw:
    """L + L with the second copy a module over the first via the bracket; ungraded inputs only."""
    d = raw.dim
    out = Raw.__new__(Raw)
    out.__dict__.update(raw.__dict__)
    out.names = raw.names + [nm + "_m" for nm in raw.names]
    out.deg = raw.deg + raw.deg
    out.dim = 2 * d
    out._acache = {}
    out.alpha_rows = [[raw.alpha_rows[i % d][j % d] if (i < d) == (j < d) else Fraction(0)
                       for j in range(2 * d)] for i in range(2 * d)]
    out.table = {}
    for t in product(range(2 * d), repeat=raw.n):
        ms = [p for p, i in enumerate(t) if i >= d]
        if len(ms) > 1:
            continue
        val = raw.basis_br(tuple(i % d for i in t))
        if not any(val):
            continue
        z = (Fraction(0),) * d
        out.table[t] = tuple(val) + z if not ms else z + tuple(val)
    return out


def inner_map(raw: Raw, xs):
    """Rows of y -> [x_1, .., x_{n-1}, y] for basis indices xs."""
    cols = [raw.basis_br(tuple(xs) + (j,)) for j in range(raw.dim)]
    return [[cols[j][i] for j in range(raw.dim)] for i in range(raw.dim)]
