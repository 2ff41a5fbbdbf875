"""Buchberger's algorithm, normal forms and Schreyer syzygies for submodules of R^r.

Vectors are plain dicts ``{(position, monomial): coefficient}``; a polynomial is
the rank-1 case with every position equal to 0.  Module term orders combine a
monomial order with a position priority (lower index = more important).
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import Monomial, TermOrder, mono_div, mono_divides, mono_gcd, mono_lcm

Term = Tuple[int, Monomial]
Vec = Dict[Term, object]


class ModuleOrder:
    """Order on module terms ``(pos, mono)``.

    ``kind='top'`` compares monomials first (term over position), ``'pot'``
    compares positions first.  When ``block`` is set, every term in a position
    ``< block`` beats every term in a position ``>= block``; this is the
    elimination order used for kernels and lifting.
    """

    def __init__(self, order: TermOrder, kind: str = "top", block: Optional[int] = None):
        if kind not in ("top", "pot"):
            raise ValueError(f"unknown module order {kind!r}")
        self.order = order
        self.kind = kind
        self.block = block
        self._cache: Dict[Term, tuple] = {}

    def key(self, term: Term) -> tuple:
        k = self._cache.get(term)
        if k is None:
            pos, m = term
            blk = 1 if (self.block is not None and pos < self.block) else 0
            if self.kind == "top":
                k = (blk, self.order.key(m), -pos)
            else:
                k = (blk, -pos, self.order.key(m))
            self._cache[term] = k
        return k

    def leading(self, vec: Vec) -> Term:
        return max(vec, key=self.key)


def _axpy(p: Vec, q, shift: Monomial, g: Vec, F) -> None:
    """In place ``p -= q * x^shift * g``."""
    sub, mul = F.sub, F.mul
    for (pos, m), c in g.items():
        t = (pos, tuple(a + b for a, b in zip(m, shift)))
        v = sub(p.get(t, 0), mul(q, c))
        if v:
            p[t] = v
        else:
            p.pop(t, None)


def scale_vec(v: Vec, c, F) -> Vec:
    return {t: F.mul(x, c) for t, x in v.items()} if c else {}


def monic(v: Vec, order: ModuleOrder, F) -> Vec:
    if not v:
        return v
    lc = v[order.leading(v)]
    if lc == 1:
        return dict(v)
    return scale_vec(v, F.inv(lc), F)


class GroebnerBasis:
    """A Gröbner basis of a submodule; elements are monic."""

    def __init__(self, elements: List[Vec], order: ModuleOrder, field):
        self.elements = elements
        self.order = order
        self.field = field
        self.leads: List[Term] = [order.leading(g) for g in elements]
        self._by_pos: Dict[int, List[int]] = {}
        for i, (pos, _) in enumerate(self.leads):
            self._by_pos.setdefault(pos, []).append(i)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def reducer(self, term: Term) -> Optional[int]:
        pos, m = term
        for i in self._by_pos.get(pos, ()):
            if mono_divides(self.leads[i][1], m):
                return i
        return None

    def reduce(self, f: Vec) -> Vec:
        """Fully reduced normal form of ``f``."""
        return normal_form(f, self)

    def contains(self, f: Vec) -> bool:
        return not self.reduce(f)

    def divide(self, f: Vec):
        """Division with remainder: ``f = sum q_i * g_i + r``; ``q_i`` as {mono: coeff}."""
        F = self.field
        key = self.order.key
        p = dict(f)
        r: Vec = {}
        quots: List[Dict[Monomial, object]] = [dict() for _ in self.elements]
        while p:
            t = max(p, key=key)
            c = p[t]
            i = self.reducer(t)
            if i is None:
                r[t] = c
                del p[t]
                continue
            shift = mono_div(t[1], self.leads[i][1])
            q = quots[i]
            v = F.add(q.get(shift, 0), c)
            if v:
                q[shift] = v
            else:
                q.pop(shift, None)
            _axpy(p, c, shift, self.elements[i], F)
        return quots, r


def normal_form(f: Vec, G: GroebnerBasis) -> Vec:
    F = G.field
    key = G.order.key
    p = dict(f)
    r: Vec = {}
    while p:
        t = max(p, key=key)
        i = G.reducer(t)
        if i is None:
            r[t] = p.pop(t)
            continue
        _axpy(p, p[t], mono_div(t[1], G.leads[i][1]), G.elements[i], F)
    return r


def _top_reduce(f: Vec, elems: List[Vec], leads: List[Term], by_pos, order: ModuleOrder, F) -> Vec:
    p = dict(f)
    key = order.key
    while p:
        t = max(p, key=key)
        pos, m = t
        for i in by_pos.get(pos, ()):
            if mono_divides(leads[i][1], m):
                _axpy(p, p[t], mono_div(m, leads[i][1]), elems[i], F)
                break
        else:
            return p
    return p


def buchberger(gens: Sequence[Vec], order: ModuleOrder, field) -> GroebnerBasis:
    """Reduced Gröbner basis of the submodule generated by ``gens``.

    Normal selection strategy (smallest lcm first, ties broken by pair index),
    Buchberger's chain criterion, and the coprime criterion for ideals.
    Output is monic, interreduced and sorted by increasing leading term.
    """
    F = field
    key = order.key
    elems: List[Vec] = []
    leads: List[Term] = []
    by_pos: Dict[int, List[int]] = {}
    pending: set = set()
    is_ideal = all(pos == 0 for g in gens for (pos, _) in g)

    def add(h: Vec) -> None:
        h = monic(h, order, F)
        idx = len(elems)
        lt = order.leading(h)
        elems.append(h)
        leads.append(lt)
        for i in by_pos.get(lt[0], ()):
            pending.add((i, idx))
        by_pos.setdefault(lt[0], []).append(idx)

    for g in sorted((g for g in gens if g), key=lambda v: key(order.leading(v))):
        h = _top_reduce(g, elems, leads, by_pos, order, F)
        if h:
            add(h)

    def pair_key(pr):
        i, j = pr
        lcm = mono_lcm(leads[i][1], leads[j][1])
        return (sum(lcm), key((leads[i][0], lcm)), i, j)

    while pending:
        pr = min(pending, key=pair_key)
        pending.discard(pr)
        i, j = pr
        li, lj = leads[i], leads[j]
        if is_ideal and not any(mono_gcd(li[1], lj[1])):
            continue
        lcm = mono_lcm(li[1], lj[1])
        skip = False
        for l in by_pos.get(li[0], ()):
            if l == i or l == j:
                continue
            if not mono_divides(leads[l][1], lcm):
                continue
            if (min(i, l), max(i, l)) in pending or (min(j, l), max(j, l)) in pending:
                continue
            skip = True
            break
        if skip:
            continue
        s: Vec = {}
        _axpy(s, F.coerce(-1), mono_div(lcm, li[1]), elems[i], F)
        _axpy(s, F.coerce(1), mono_div(lcm, lj[1]), elems[j], F)
        h = _top_reduce(s, elems, leads, by_pos, order, F)
        if h:
            add(h)

    # minimalize: drop elements whose leading term is divisible by another one
    keep = []
    for i, (pos, m) in enumerate(leads):
        redundant = False
        for j, (pos2, m2) in enumerate(leads):
            if j == i or pos2 != pos or not mono_divides(m2, m):
                continue
            if m2 != m or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(i)
    minimal = [elems[i] for i in keep]
    provisional = GroebnerBasis(minimal, order, F)
    reduced = []
    for idx, g in enumerate(minimal):
        others = GroebnerBasis(minimal[:idx] + minimal[idx + 1 :], order, F)
        lt = provisional.leads[idx]
        tail = dict(g)
        c = tail.pop(lt)
        nf = normal_form(tail, others)
        nf[lt] = c
        reduced.append(monic(nf, order, F))
    reduced.sort(key=lambda v: key(order.leading(v)))
    return GroebnerBasis(reduced, order, F)


def s_pairs_reduce_to_zero(G: GroebnerBasis) -> bool:
    """Buchberger's criterion checked on every pair with a common leading position."""
    F = G.field
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            li, lj = G.leads[i], G.leads[j]
            if li[0] != lj[0]:
                continue
            lcm = mono_lcm(li[1], lj[1])
            s: Vec = {}
            _axpy(s, F.coerce(-1), mono_div(lcm, li[1]), G.elements[i], F)
            _axpy(s, F.coerce(1), mono_div(lcm, lj[1]), G.elements[j], F)
            if normal_form(s, G):
                return False
    return True


def schreyer_syzygies(G: GroebnerBasis) -> List[Vec]:
    """Generators of Syz(g_1..g_m) as vectors in R^m (Schreyer's theorem)."""
    F = G.field
    out: List[Vec] = []
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            li, lj = G.leads[i], G.leads[j]
            if li[0] != lj[0]:
                continue
            lcm = mono_lcm(li[1], lj[1])
            si, sj = mono_div(lcm, li[1]), mono_div(lcm, lj[1])
            s: Vec = {}
            _axpy(s, F.coerce(-1), si, G.elements[i], F)
            _axpy(s, F.coerce(1), sj, G.elements[j], F)
            quots, rem = G.divide(s)
            assert not rem, "input is not a Gröbner basis"
            syz: Vec = {(i, si): F.coerce(1), (j, sj): F.coerce(-1)}
            for l, q in enumerate(quots):
                for m, c in q.items():
                    t = (l, m)
                    v = F.sub(syz.get(t, 0), c)
                    if v:
                        syz[t] = v
                    else:
                        syz.pop(t, None)
            if syz:
                out.append(syz)
    return out
