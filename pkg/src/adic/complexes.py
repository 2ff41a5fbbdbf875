"""Bounded cochain complexes, chain maps, homology and tensor products.

Indexing is cohomological: ``d^i : C^i -> C^{i+1}``.  Terms are finitely
presented modules; free complexes simply have zero relations.
"""

from __future__ import annotations

from functools import cached_property
from typing import Dict, List, Optional

from .algebra import AlgebraError
from .modules import (
    FPModule,
    Matrix,
    ModuleMap,
    QuotientRing,
    Submodule,
    as_quotient,
    graded_shifts,
    lift_vector,
    tensor_modules,
)


class ChainComplex:
    """Complex ``C^lo -> ... -> C^hi``; ``differentials[i]`` is ``d^i`` (rank C^{i+1} x rank C^i)."""

    def __init__(self, ring, terms: Dict[int, FPModule], differentials: Dict[int, Matrix], check: bool = True):
        self.ring = as_quotient(ring)
        if not terms:
            raise AlgebraError("a complex needs at least one term")
        self.lo = min(terms)
        self.hi = max(terms)
        if sorted(terms) != list(range(self.lo, self.hi + 1)):
            raise AlgebraError("terms must occupy a contiguous degree range")
        self.terms = dict(terms)
        base = self.ring.base
        self.differentials: Dict[int, Matrix] = {}
        for i in range(self.lo, self.hi):
            d = differentials.get(i)
            if d is None:
                d = Matrix.zeros(base, self.terms[i + 1].rank, self.terms[i].rank)
            if d.shape != (self.terms[i + 1].rank, self.terms[i].rank):
                raise AlgebraError(f"differential d^{i} has shape {d.shape}")
            self.differentials[i] = d
        if check:
            self.check()

    @classmethod
    def free(cls, ring, ranks: Dict[int, int], differentials: Dict[int, Matrix], check: bool = True) -> "ChainComplex":
        R = as_quotient(ring)
        return cls(R, {i: FPModule.free(R, r) for i, r in ranks.items()}, differentials, check)

    def check(self) -> None:
        """Hard error unless every differential is well defined and ``d∘d = 0``."""
        for i in range(self.lo, self.hi):
            src, tgt = self.terms[i], self.terms[i + 1]
            d = self.differentials[i]
            for r in src.full_relations():
                if not tgt.is_zero_element(d.apply(r)):
                    raise AlgebraError(f"d^{i} does not respect relations")
        for i in range(self.lo, self.hi - 1):
            dd = self.differentials[i + 1] @ self.differentials[i]
            tgt = self.terms[i + 2]
            if any(not tgt.is_zero_element(c) for c in dd.cols):
                raise AlgebraError(f"d^{i + 1} ∘ d^{i} != 0")

    def rank(self, i: int) -> int:
        t = self.terms.get(i)
        return t.rank if t is not None else 0

    def term(self, i: int) -> FPModule:
        t = self.terms.get(i)
        return t if t is not None else FPModule.zero(self.ring)

    def differential(self, i: int) -> Matrix:
        if self.lo <= i < self.hi:
            return self.differentials[i]
        return Matrix.zeros(self.ring.base, self.rank(i + 1), self.rank(i))

    def is_free(self) -> bool:
        return all(t.relations.ncols == 0 for t in self.terms.values())

    def ranks(self) -> Dict[int, int]:
        return {i: self.terms[i].rank for i in range(self.lo, self.hi + 1)}

    def cycles(self, i: int) -> List:
        src = self.term(i)
        if src.rank == 0:
            return []
        phi = ModuleMap(src, self.term(i + 1), self.differential(i), check=False)
        return phi.kernel.generators

    def boundary_ambient(self, i: int) -> FPModule:
        """``C^i / im d^{i-1}`` as a presented module."""
        t = self.term(i)
        return FPModule(self.ring, t.rank, t.relations.hstack(self.differential(i - 1)), t.shifts)

    def homology_submodule(self, i: int) -> Submodule:
        return Submodule(self.boundary_ambient(i), self.cycles(i))

    def homology_is_zero(self, i: int) -> bool:
        return self.homology_submodule(i).is_zero()

    def base_change(self, ring) -> "ChainComplex":
        S = as_quotient(ring)
        terms = {i: t.base_change(S) for i, t in self.terms.items()}
        return ChainComplex(S, terms, self.differentials)

    def __repr__(self):
        return f"ChainComplex(ranks={self.ranks()}, ring={self.ring!r})"


def homology_at(C: ChainComplex, i: int) -> FPModule:
    """Presentation of ``ker d^i / im d^{i-1}``; the zero module is returned with rank 0."""
    H = C.homology_submodule(i)
    if H.is_zero():
        return FPModule.zero(C.ring)
    return H.module


class ComplexMap:
    """Chain map ``source -> target``; ``maps[i]`` is rank T^i x rank S^i."""

    def __init__(self, source: ChainComplex, target: ChainComplex, maps: Dict[int, Matrix], check: bool = True):
        self.source = source
        self.target = target
        base = source.ring.base
        lo = min(source.lo, target.lo)
        hi = max(source.hi, target.hi)
        self.maps: Dict[int, Matrix] = {}
        for i in range(lo, hi + 1):
            m = maps.get(i)
            if m is None:
                m = Matrix.zeros(base, target.rank(i), source.rank(i))
            if m.shape != (target.rank(i), source.rank(i)):
                raise AlgebraError(f"component {i} has shape {m.shape}")
            self.maps[i] = m
        if check:
            self.check()

    def component(self, i: int) -> Matrix:
        m = self.maps.get(i)
        if m is None:
            return Matrix.zeros(self.source.ring.base, self.target.rank(i), self.source.rank(i))
        return m

    def check(self) -> None:
        for i in range(min(self.maps), max(self.maps)):
            lhs = self.target.differential(i) @ self.component(i)
            rhs = self.component(i + 1) @ self.source.differential(i)
            diff = lhs - rhs
            tgt = self.target.term(i + 1)
            if any(not tgt.is_zero_element(c) for c in diff.cols):
                raise AlgebraError(f"square at degree {i} does not commute")

    def compose(self, other: "ComplexMap") -> "ComplexMap":
        """``self ∘ other``."""
        maps = {i: self.component(i) @ other.component(i) for i in other.maps}
        return ComplexMap(other.source, self.target, maps, check=False)

    def homology_images(self, i: int) -> List:
        """Images of the source cycle generators at degree ``i``."""
        m = self.component(i)
        return [m.apply(z) for z in self.source.cycles(i)]

    def induced_is_zero(self, i: int) -> bool:
        amb = self.target.boundary_ambient(i)
        return all(amb.is_zero_element(v) for v in self.homology_images(i))

    def homology_map(self, i: int) -> ModuleMap:
        """Induced map ``H^i(source) -> H^i(target)`` as a matrix on homology generators."""
        Hs = self.source.homology_submodule(i)
        Ht = self.target.homology_submodule(i)
        m = self.component(i)
        cols = []
        for z in Hs.generators:
            img = m.apply(z)
            u = lift_vector(Ht.generators, Ht.ambient.rank, img, Ht.ambient.full_relations(), self.source.ring.base)
            if u is None:
                raise AlgebraError("image of a cycle is not a cycle")
            cols.append(u)
        return ModuleMap(Hs.module, Ht.module, Matrix(self.source.ring.base, len(Ht.generators), cols), check=False)


def tensor_complexes(C: ChainComplex, D: ChainComplex) -> ChainComplex:
    """Total complex of ``C ⊗ D`` with the Koszul sign ``d(c⊗e) = dc⊗e + (-1)^p c⊗de``.

    Degree-n basis: blocks ``(p, n-p)`` by increasing ``p``; inside a block the
    index of ``c_a ⊗ e_b`` is ``a * rank D^{n-p} + b``.
    """
    if not (C.is_free() and D.is_free()):
        raise AlgebraError("tensor_complexes expects free complexes")
    R = C.ring
    base = R.base
    F = base.field
    lo, hi = C.lo + D.lo, C.hi + D.hi
    blocks: Dict[int, List] = {}
    offsets: Dict[tuple, int] = {}
    ranks: Dict[int, int] = {}
    for n in range(lo, hi + 1):
        off = 0
        blocks[n] = []
        for p in range(C.lo, C.hi + 1):
            q = n - p
            if D.lo <= q <= D.hi:
                offsets[(p, q)] = off
                blocks[n].append((p, q))
                off += C.rank(p) * D.rank(q)
        ranks[n] = off
    diffs: Dict[int, Matrix] = {}
    for n in range(lo, hi):
        cols = []
        for (p, q) in blocks[n]:
            rc, rd = C.rank(p), D.rank(q)
            dc = C.differential(p)
            dd = D.differential(q)
            sign = F.coerce(-1 if p % 2 else 1)
            for a in range(rc):
                for b in range(rd):
                    col = {}
                    if (p + 1, q) in offsets:
                        off = offsets[(p + 1, q)]
                        rd2 = D.rank(q)
                        for (c, m), v in dc.cols[a].items():
                            col[(off + c * rd2 + b, m)] = v
                    if (p, q + 1) in offsets:
                        off = offsets[(p, q + 1)]
                        rd2 = D.rank(q + 1)
                        for (e, m), v in dd.cols[b].items():
                            t = (off + a * rd2 + e, m)
                            s = F.add(col.get(t, 0), F.mul(sign, v))
                            if s:
                                col[t] = s
                            else:
                                col.pop(t, None)
                    cols.append(col)
        diffs[n] = Matrix(base, ranks[n + 1], cols)
    return ChainComplex.free(R, ranks, diffs)


def tensor_module_complex(N: FPModule, C: ChainComplex) -> ChainComplex:
    """``N ⊗ C`` for a free complex ``C``; term ``N ⊗ R^r`` indexes copy ``j`` generator ``e`` as ``j * rank N + e``."""
    if not C.is_free():
        raise AlgebraError("tensor_module_complex expects a free complex")
    R = C.ring
    if N.ring != R:
        if N.ring.contains_ring(R):
            C = C.base_change(N.ring)
            R = N.ring
        elif R.contains_ring(N.ring):
            N = N.base_change(R)
        else:
            raise AlgebraError("ring mismatch")
    if N.shifts is None:
        shifts = graded_shifts(N)
        if shifts is not None:
            N = FPModule(N.ring, N.rank, N.relations, shifts)
    terms = {i: tensor_modules(FPModule(R, C.rank(i), shifts=C.term(i).shifts), N) for i in range(C.lo, C.hi + 1)}
    diffs = {i: C.differential(i).kron_identity(N.rank) for i in range(C.lo, C.hi)}
    return ChainComplex(R, terms, diffs)


def shift_complex(C: ChainComplex, s: int) -> ChainComplex:
    """Reindex so that old degree ``i`` sits at ``i - s`` (no sign change)."""
    return ChainComplex(C.ring, {i - s: t for i, t in C.terms.items()}, {i - s: d for i, d in C.differentials.items()})


def euler_characteristic_ranks(C: ChainComplex) -> int:
    return sum((-1) ** (i % 2) * C.rank(i) for i in range(C.lo, C.hi + 1))


def dimension_vector(C: ChainComplex) -> Dict[int, Optional[int]]:
    """Vector-space dimensions of every homology module (None when infinite)."""
    out = {}
    for i in range(C.lo, C.hi + 1):
        H = C.homology_submodule(i)
        out[i] = 0 if H.is_zero() else H.module.vector_space_dim()
    return out
