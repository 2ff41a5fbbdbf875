"""Fixed corpus of ideals and submodules with an independent membership oracle.

The oracle never looks at a Gröbner basis: it builds the Macaulay matrix of all
products ``m * g_i`` up to a degree bound and decides span membership by plain
Gaussian elimination over the coefficient field.
"""

import itertools
import random

from adic.algebra import GF, QQ, PolynomialRing
from adic.groebner import ModuleOrder, buchberger

XYZ = PolynomialRing(QQ, ["x", "y", "z"])
XYZ_LEX = PolynomialRing(QQ, ["x", "y", "z"], "lex")
XY = PolynomialRing(QQ, ["x", "y"])
XY_LEX = PolynomialRing(QQ, ["x", "y"], "lex")
F7 = PolynomialRing(GF(7), ["x", "y", "z"])
F5_XY = PolynomialRing(GF(5), ["x", "y"], "lex")
X = PolynomialRing(QQ, ["x"])


def _ideal(ring, *gens, homogeneous=True):
    return {"ring": ring, "rank": 1, "gens": [[ring(g)] for g in gens], "homogeneous": homogeneous}


def _submodule(ring, *cols, homogeneous=True):
    return {"ring": ring, "rank": len(cols[0]), "gens": [[ring(e) for e in c] for c in cols],
            "homogeneous": homogeneous}


CORPUS = [
    _ideal(XY, "x", "y"),
    _ideal(XY, "x^2", "x*y", "y^3"),
    _ideal(XY, "x^2 - y^2", "x*y"),
    _ideal(XYZ, "x*y", "y*z", "x*z"),
    _ideal(XYZ, "x^2 - y*z", "y^2 - x*z", "z^2 - x*y"),
    _ideal(XYZ, "x*z - y^2", "x^3 - y*z^2"),
    _ideal(XYZ, "x^3", "y^3", "z^3", "x*y*z"),
    _ideal(XYZ_LEX, "x^2 - y*z", "x*y - z^2"),
    _ideal(XY_LEX, "x^2 + y^2 - 1", "x*y - 1", homogeneous=False),
    _ideal(XY, "x^3 - 2*x*y", "x^2*y - 2*y^2 + x", homogeneous=False),
    _ideal(XYZ, "x + y + z", "x*y + y*z + x*z", "x*y*z - 1", homogeneous=False),
    _ideal(X, "x^4 - 1", "x^6 - 1", homogeneous=False),
    _ideal(F7, "x^2 + 3*y*z", "y^2 - x*z", "x*y"),
    _ideal(F7, "x^3 - y", "y^2 - z", homogeneous=False),
    _ideal(F5_XY, "x^2 - y", "x*y - 1", homogeneous=False),
    _ideal(XYZ, "x^2*y - z^3", "x*y^2 - x*z^2", "y^3 - y*z^2"),
    _submodule(XY, ["x", "y"], ["y", "0"], ["0", "x"]),
    _submodule(XY, ["x", "y"], ["y", "x"]),
    _submodule(XYZ, ["x", "y", "z"], ["y", "z", "x"]),
    _submodule(XY, ["x^2", "x*y"], ["x*y", "y^2"], ["y^2", "x^2"]),
    _submodule(F7, ["x", "z"], ["y", "x"], ["z", "y"]),
    _submodule(XYZ_LEX, ["x*y", "z^2"], ["y^2", "x*z"]),
]


def to_vec(components):
    v = {}
    for q, p in enumerate(components):
        for m, c in p.terms.items():
            v[(q, m)] = c
    return v


def groebner_of(entry):
    ring = entry["ring"]
    return buchberger([to_vec(g) for g in entry["gens"]], ModuleOrder(ring.order), ring.field)


def _monomials(n, d):
    for combo in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        yield tuple(e)


def _vdeg(v):
    return max(sum(m) for (_, m) in v) if v else 0


def _shift(v, mono):
    return {(q, tuple(a + b for a, b in zip(m, mono))): c for (q, m), c in v.items()}


def _eliminate(rows, target, F):
    """Is ``target`` in the span of ``rows``?  Sparse dict rows, exact field arithmetic."""
    pivots = {}
    def reduce(r):
        r = dict(r)
        while r:
            key = max(r)
            if key not in pivots:
                return r, key
            prow = pivots[key]
            c = r[key]
            for k, v in prow.items():
                nv = F.sub(r.get(k, F.coerce(0)), F.mul(c, v))
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        return r, None
    for row in rows:
        r, key = reduce(row)
        if key is not None:
            inv = F.inv(r[key])
            pivots[key] = {k: F.mul(inv, v) for k, v in r.items()}
    r, _ = reduce(target)
    return not r


def macaulay_member(entry, f_vec, bound):
    """Exhaustive membership search: ``f`` in span{m * g_i : deg(m * g_i) <= bound}."""
    ring = entry["ring"]
    n = ring.nvars
    rows = []
    for g in entry["gens"]:
        gv = to_vec(g)
        if not gv:
            continue
        dg = _vdeg(gv)
        for d in range(bound - dg + 1):
            for m in _monomials(n, d):
                rows.append(_shift(gv, m))
    return _eliminate(rows, f_vec, ring.field)


def random_member(entry, rng, degree):
    ring = entry["ring"]
    out = {}
    F = ring.field
    for g in entry["gens"]:
        gv = to_vec(g)
        if not gv:
            continue
        d = degree - _vdeg(gv)
        if d < 0:
            continue
        mons = list(_monomials(ring.nvars, d))
        for _ in range(2):
            c = F.coerce(rng.randint(-3, 3))
            if not c:
                continue
            for k, v in _shift(gv, rng.choice(mons)).items():
                nv = F.add(out.get(k, F.coerce(0)), F.mul(c, v))
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
    return out


def random_candidate(entry, rng, degree):
    ring = entry["ring"]
    F = ring.field
    mons = list(_monomials(ring.nvars, degree))
    out = {}
    for _ in range(3):
        c = F.coerce(rng.randint(1, 4))
        out[(rng.randrange(entry["rank"]), rng.choice(mons))] = c
    return out


def sample_elements(entry, seed):
    rng = random.Random(seed)
    degs = [_vdeg(to_vec(g)) for g in entry["gens"]]
    d = max(degs) + 1
    return [random_member(entry, rng, d) for _ in range(3)] + [random_candidate(entry, rng, d) for _ in range(3)]
