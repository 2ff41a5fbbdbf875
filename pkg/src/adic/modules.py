"""Quotient rings, ideals, matrices and finitely presented modules.

Every ring here is ``A / I`` for a polynomial ring ``A`` and an ideal ``I``
(possibly zero); ``A_k = A / a^{k+1}`` is the special case used for adic levels.
Modules over ``A / I`` are cokernels of polynomial matrices over ``A`` whose
relation submodule is implicitly enlarged by ``I * A^r``.  All computations
run in ``A`` through one Gröbner engine.
"""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

from .algebra import AlgebraError, Monomial, Polynomial, PolynomialRing, mono_divides
from .groebner import GroebnerBasis, ModuleOrder, Vec, buchberger, normal_form

# ---------------------------------------------------------------- vector helpers


def poly_to_vec(p: Polynomial, pos: int = 0) -> Vec:
    return {(pos, m): c for m, c in p.terms.items()}


def vec_to_poly(v: Vec, base: PolynomialRing, pos: int = 0) -> Polynomial:
    return Polynomial(base, {m: c for (q, m), c in v.items() if q == pos})


def vec_components(v: Vec, base: PolynomialRing, rank: int) -> List[Polynomial]:
    comps = [dict() for _ in range(rank)]
    for (q, m), c in v.items():
        comps[q][m] = c
    return [Polynomial(base, d) for d in comps]


def vec_from_components(comps: Sequence[Polynomial]) -> Vec:
    out: Vec = {}
    for i, p in enumerate(comps):
        for m, c in p.terms.items():
            out[(i, m)] = c
    return out


def vec_add(a: Vec, b: Vec, F, scale_b=1) -> Vec:
    out = dict(a)
    for t, c in b.items():
        v = F.add(out.get(t, 0), F.mul(c, scale_b) if scale_b != 1 else c)
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def vec_mul_poly(v: Vec, p: Polynomial, F) -> Vec:
    out: Vec = {}
    for (q, m), c in v.items():
        for m2, c2 in p.terms.items():
            t = (q, tuple(a + b for a, b in zip(m, m2)))
            s = F.add(out.get(t, 0), F.mul(c, c2))
            if s:
                out[t] = s
            else:
                out.pop(t, None)
    return out


def vec_shift(v: Vec, offset: int) -> Vec:
    return {(q + offset, m): c for (q, m), c in v.items()}


def vec_restrict(v: Vec, lo: int, hi: int, offset: int = 0) -> Vec:
    return {(q - offset, m): c for (q, m), c in v.items() if lo <= q < hi}


def unit_vec(i: int, nvars: int, F) -> Vec:
    return {(i, (0,) * nvars): F.coerce(1)}


def vec_degree(v: Vec, shifts: Optional[Sequence[int]] = None) -> Optional[int]:
    """Common degree of all terms (with generator shifts), or None if inhomogeneous."""
    degs = {sum(m) + (shifts[q] if shifts else 0) for (q, m) in v}
    if len(degs) == 1:
        return degs.pop()
    return None if degs else 0


# ---------------------------------------------------------------- rings and ideals


class QuotientRing:
    """``A / I`` for a polynomial ring ``A``; ``I`` is given by generators over ``A``."""

    def __init__(self, base: PolynomialRing, modulus: Iterable[Polynomial] = (), level: Optional[int] = None):
        self.base = base
        mod = tuple(base(p) for p in modulus if not base(p).is_zero())
        self.level = level
        if mod:
            gb = buchberger([poly_to_vec(p) for p in mod], ModuleOrder(base.order), base.field)
            self.modulus = tuple(vec_to_poly(g, base) for g in gb)
            self._gb = gb
        else:
            self.modulus = ()
            self._gb = GroebnerBasis([], ModuleOrder(base.order), base.field)

    @property
    def field(self):
        return self.base.field

    @property
    def nvars(self) -> int:
        return self.base.nvars

    @property
    def names(self):
        return self.base.names

    def gens(self):
        return self.base.gens()

    def is_polynomial_ring(self) -> bool:
        return not self.modulus

    def reduce(self, p: Polynomial) -> Polynomial:
        if not self.modulus:
            return p
        return vec_to_poly(normal_form(poly_to_vec(p), self._gb), self.base)

    def is_zero(self, p: Polynomial) -> bool:
        return self.reduce(p).is_zero()

    def is_unit_ring(self) -> bool:
        """True when ``I`` is the whole ring (the zero ring)."""
        return any(p.is_constant() and not p.is_zero() for p in self.modulus)

    def quotient(self, extra: Iterable[Polynomial], level: Optional[int] = None) -> "QuotientRing":
        return QuotientRing(self.base, tuple(self.modulus) + tuple(extra), level)

    def contains_ring(self, other: "QuotientRing") -> bool:
        """True when ``self`` is a quotient of ``other`` (modulus of other inside ours)."""
        return self.base == other.base and all(self.is_zero(p) for p in other.modulus)

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.base == other.base and self.modulus == other.modulus

    def __hash__(self):
        return hash((self.base, self.modulus))

    def __repr__(self):
        if not self.modulus:
            return repr(self.base)
        return f"{self.base!r} / <{', '.join(map(str, self.modulus))}>"


def as_quotient(R) -> QuotientRing:
    if isinstance(R, QuotientRing):
        return R
    if isinstance(R, PolynomialRing):
        return QuotientRing(R)
    raise TypeError(f"not a ring: {R!r}")


class Ideal:
    """A finitely generated ideal of ``ring`` (generators are polynomials over the base)."""

    def __init__(self, ring, gens: Iterable):
        self.ring = as_quotient(ring)
        base = self.ring.base
        self.gens = tuple(base(g) for g in gens)

    @cached_property
    def groebner(self) -> GroebnerBasis:
        base = self.ring.base
        vecs = [poly_to_vec(g) for g in self.gens] + [poly_to_vec(g) for g in self.ring.modulus]
        return buchberger(vecs, ModuleOrder(base.order), base.field)

    def basis(self) -> Tuple[Polynomial, ...]:
        """Reduced Gröbner basis (including the ambient modulus)."""
        return tuple(vec_to_poly(g, self.ring.base) for g in self.groebner)

    def contains(self, p: Polynomial) -> bool:
        return not normal_form(poly_to_vec(self.ring.base(p)), self.groebner)

    def is_subset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.is_subset(other) and other.is_subset(self)

    def __hash__(self):
        return hash(self.ring)

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def power(self, e: int) -> "Ideal":
        if e == 0:
            return Ideal(self.ring, [self.ring.base.one()])
        prods = set()
        out = []
        for combo in itertools.combinations_with_replacement(range(len(self.gens)), e):
            p = self.ring.base.one()
            for i in combo:
                p = p * self.gens[i]
            if p and p not in prods:
                prods.add(p)
                out.append(p)
        return Ideal(self.ring, out)

    def is_monomial_generated_by_variables(self) -> bool:
        return all(len(g.terms) == 1 and g.degree() == 1 for g in self.gens)

    def __repr__(self):
        return "<" + ", ".join(str(g) for g in self.gens) + ">"


def adic_quotient(ideal: Ideal, k: int) -> QuotientRing:
    """``A_k = A / a^{k+1}`` over the ambient ring of ``ideal``."""
    if k < 0:
        raise AlgebraError("adic level must be non-negative")
    return ideal.ring.quotient(ideal.power(k + 1).gens, level=k)


# ---------------------------------------------------------------- matrices


class Matrix:
    """Polynomial matrix stored by columns (each column a sparse vector)."""

    def __init__(self, base: PolynomialRing, nrows: int, cols: Sequence[Vec]):
        self.base = base
        self.nrows = nrows
        self.cols = tuple(dict(c) for c in cols)

    @property
    def ncols(self) -> int:
        return len(self.cols)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @classmethod
    def from_rows(cls, base: PolynomialRing, rows: Sequence[Sequence], ncols: Optional[int] = None) -> "Matrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols = [dict() for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise AlgebraError("ragged matrix")
            for j, e in enumerate(row):
                for m, c in base(e).terms.items():
                    cols[j][(i, m)] = c
        return cls(base, nrows, cols)

    @classmethod
    def from_columns(cls, base: PolynomialRing, nrows: int, columns: Sequence[Sequence]) -> "Matrix":
        cols = []
        for col in columns:
            if len(col) != nrows:
                raise AlgebraError("column length mismatch")
            cols.append(vec_from_components([base(e) for e in col]))
        return cls(base, nrows, cols)

    @classmethod
    def identity(cls, base: PolynomialRing, n: int) -> "Matrix":
        return cls(base, n, [unit_vec(i, base.nvars, base.field) for i in range(n)])

    @classmethod
    def zeros(cls, base: PolynomialRing, nrows: int, ncols: int) -> "Matrix":
        return cls(base, nrows, [{} for _ in range(ncols)])

    def entry(self, i: int, j: int) -> Polynomial:
        return vec_to_poly(self.cols[j], self.base, i)

    def rows(self) -> List[List[Polynomial]]:
        return [[self.entry(i, j) for j in range(self.ncols)] for i in range(self.nrows)]

    def columns(self) -> List[List[Polynomial]]:
        return [vec_components(c, self.base, self.nrows) for c in self.cols]

    def apply(self, v: Vec) -> Vec:
        """Matrix times a column vector given sparsely over positions ``0..ncols-1``."""
        F = self.base.field
        out: Vec = {}
        for (j, m), c in v.items():
            for (i, m2), c2 in self.cols[j].items():
                t = (i, tuple(a + b for a, b in zip(m, m2)))
                s = F.add(out.get(t, 0), F.mul(c, c2))
                if s:
                    out[t] = s
                else:
                    out.pop(t, None)
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise AlgebraError(f"shape mismatch {self.shape} @ {other.shape}")
        return Matrix(self.base, self.nrows, [self.apply(c) for c in other.cols])

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise AlgebraError("shape mismatch")
        F = self.base.field
        return Matrix(self.base, self.nrows, [vec_add(a, b, F) for a, b in zip(self.cols, other.cols)])

    def __neg__(self) -> "Matrix":
        F = self.base.field
        return Matrix(self.base, self.nrows, [{t: F.neg(c) for t, c in col.items()} for col in self.cols])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale_poly(self, p: Polynomial) -> "Matrix":
        F = self.base.field
        return Matrix(self.base, self.nrows, [vec_mul_poly(c, p, F) for c in self.cols])

    def transpose(self) -> "Matrix":
        cols = [dict() for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for (i, m), c in col.items():
                cols[i][(j, m)] = c
        return Matrix(self.base, self.ncols, cols)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise AlgebraError("row count mismatch")
        return Matrix(self.base, self.nrows, self.cols + other.cols)

    def block_diag(self, other: "Matrix") -> "Matrix":
        cols = list(self.cols) + [vec_shift(c, self.nrows) for c in other.cols]
        return Matrix(self.base, self.nrows + other.nrows, cols)

    def kron_identity(self, r: int) -> "Matrix":
        """``self ⊗ I_r`` with block index ``i * r + e``."""
        cols = []
        for col in self.cols:
            for e in range(r):
                cols.append({(i * r + e, m): c for (i, m), c in col.items()})
        return Matrix(self.base, self.nrows * r, cols)

    def identity_kron(self, r: int) -> "Matrix":
        """``I_r ⊗ self`` with block index ``e * nrows + i``."""
        cols = []
        for e in range(r):
            for col in self.cols:
                cols.append({(e * self.nrows + i, m): c for (i, m), c in col.items()})
        return Matrix(self.base, self.nrows * r, cols)

    def select_columns(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.base, self.nrows, [self.cols[j] for j in idx])

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        where = {i: n for n, i in enumerate(idx)}
        cols = [{(where[i], m): c for (i, m), c in col.items() if i in where} for col in self.cols]
        return Matrix(self.base, len(idx), cols)

    def reduce_mod(self, ring: QuotientRing) -> "Matrix":
        if not ring.modulus:
            return self
        cols = []
        for col in self.cols:
            out: Vec = {}
            for i, p in enumerate(vec_components(col, self.base, self.nrows)):
                out.update(poly_to_vec(ring.reduce(p), i))
            cols.append(out)
        return Matrix(self.base, self.nrows, cols)

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.cols == other.cols

    def __repr__(self):
        rows = self.rows()
        return "[" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in rows) + "]"


# ---------------------------------------------------------------- kernels and lifting


def _graph_basis(cols: Sequence[Vec], nrows: int, relations: Sequence[Vec], base: PolynomialRing) -> GroebnerBasis:
    F = base.field
    one = (0,) * base.nvars
    gens = []
    for j, c in enumerate(cols):
        g = dict(c)
        g[(nrows + j, one)] = F.coerce(1)
        gens.append(g)
    gens.extend(dict(r) for r in relations if r)
    return buchberger(gens, ModuleOrder(base.order, "top", block=nrows), F)


def kernel_vectors(cols: Sequence[Vec], nrows: int, relations: Sequence[Vec], base: PolynomialRing) -> List[Vec]:
    """Generators of ``{u : sum u_j cols_j ∈ <relations>}`` in ``A^len(cols)``."""
    if not cols:
        return []
    G = _graph_basis(cols, nrows, relations, base)
    out = []
    for g, (pos, _) in zip(G.elements, G.leads):
        if pos >= nrows:
            out.append(vec_shift(g, -nrows))
    return out


def lift_vector(cols: Sequence[Vec], nrows: int, target: Vec, relations: Sequence[Vec], base: PolynomialRing) -> Optional[Vec]:
    """Some ``u`` with ``sum u_j cols_j ≡ target`` modulo ``relations``, or None.

    The answer is the normal-form-minimal one for the elimination order, so it is
    deterministic.
    """
    F = base.field
    if not target:
        return {}
    if not cols:
        G = buchberger([dict(r) for r in relations if r], ModuleOrder(base.order), F)
        return {} if not normal_form(target, G) else None
    G = _graph_basis(cols, nrows, relations, base)
    rem = normal_form(target, G)
    if any(q < nrows for (q, _) in rem):
        return None
    return {(q - nrows, m): F.neg(c) for (q, m), c in rem.items()}


def _submodule_basis(vecs: Sequence[Vec], base: PolynomialRing) -> GroebnerBasis:
    return buchberger([dict(v) for v in vecs if v], ModuleOrder(base.order), base.field)


def reduce_vec_mod_ring(v: Vec, ring: QuotientRing, rank: int) -> Vec:
    if not ring.modulus:
        return v
    out: Vec = {}
    for i, p in enumerate(vec_components(v, ring.base, rank)):
        out.update(poly_to_vec(ring.reduce(p), i))
    return out


# ---------------------------------------------------------------- f.p. modules


class FPModule:
    """coker(A^s --relations--> A^r) over ``ring``; relations are the matrix columns.

    ``shifts`` optionally records generator degrees for graded bookkeeping.
    """

    def __init__(self, ring, rank: int, relations: Optional[Matrix] = None, shifts: Optional[Sequence[int]] = None):
        self.ring = as_quotient(ring)
        self.rank = rank
        base = self.ring.base
        if relations is None:
            relations = Matrix.zeros(base, rank, 0)
        if relations.nrows != rank:
            raise AlgebraError("relation matrix must have one row per generator")
        self.relations = relations
        self.shifts = tuple(shifts) if shifts is not None else None

    # constructors
    @classmethod
    def free(cls, ring, rank: int) -> "FPModule":
        return cls(ring, rank)

    @classmethod
    def cyclic(cls, ring, gens: Iterable) -> "FPModule":
        """``R / (gens)``."""
        R = as_quotient(ring)
        gens = [R.base(g) for g in gens]
        return cls(R, 1, Matrix.from_rows(R.base, [gens], len(gens)))

    @classmethod
    def zero(cls, ring) -> "FPModule":
        return cls(ring, 0)

    @property
    def base(self) -> PolynomialRing:
        return self.ring.base

    @property
    def field(self):
        return self.ring.base.field

    def full_relations(self) -> List[Vec]:
        out = [c for c in self.relations.cols if c]
        for g in self.ring.modulus:
            for i in range(self.rank):
                out.append(poly_to_vec(g, i))
        return out

    @cached_property
    def groebner(self) -> GroebnerBasis:
        return _submodule_basis(self.full_relations(), self.base)

    def reduce(self, v: Vec) -> Vec:
        return normal_form(v, self.groebner)

    def is_zero_element(self, v: Vec) -> bool:
        return not self.reduce(v)

    def is_zero(self) -> bool:
        nv = self.base.nvars
        return all(self.is_zero_element(unit_vec(i, nv, self.field)) for i in range(self.rank))

    def standard_monomials(self, max_degree: Optional[int] = None):
        """Yield standard terms ``(pos, mono)``; None-bound only valid for finite modules."""
        leads_by_pos = {}
        for pos, m in self.groebner.leads:
            leads_by_pos.setdefault(pos, []).append(m)
        n = self.base.nvars
        for pos in range(self.rank):
            leads = leads_by_pos.get(pos, [])
            if max_degree is None:
                bounds = _pure_power_bounds(leads, n)
                if bounds is None:
                    raise AlgebraError("module is not finite-dimensional")
                candidates = itertools.product(*[range(b) for b in bounds])
            else:
                candidates = _monomials_up_to(n, max_degree)
            for m in candidates:
                if not any(mono_divides(l, m) for l in leads):
                    yield (pos, tuple(m))

    def vector_space_dim(self) -> Optional[int]:
        """Dimension over the base field, or None when infinite."""
        leads_by_pos = {}
        for pos, m in self.groebner.leads:
            leads_by_pos.setdefault(pos, []).append(m)
        n = self.base.nvars
        for pos in range(self.rank):
            if _pure_power_bounds(leads_by_pos.get(pos, []), n) is None:
                return None
        return sum(1 for _ in self.standard_monomials())

    def hilbert_function(self, max_degree: int) -> List[int]:
        """Dimensions of graded pieces of degree 0..max_degree (generator shifts applied)."""
        shifts = self.shifts or (0,) * self.rank
        counts = [0] * (max_degree + 1)
        low = min(shifts) if shifts else 0
        for pos, m in self.standard_monomials(max_degree - min(0, low)):
            d = sum(m) + shifts[pos]
            if 0 <= d <= max_degree:
                counts[d] += 1
        return counts

    def is_homogeneous(self) -> bool:
        if self.shifts is None:
            return False
        if any(not p.is_homogeneous() for p in self.ring.modulus):
            return False
        return all(vec_degree(c, self.shifts) is not None for c in self.relations.cols if c)

    def with_shifts(self, shifts) -> "FPModule":
        return FPModule(self.ring, self.rank, self.relations, shifts)

    def base_change(self, ring) -> "FPModule":
        """``S ⊗_R M`` for a quotient ring ``S`` of ``R``."""
        S = as_quotient(ring)
        if not S.contains_ring(self.ring):
            raise AlgebraError("base change target is not a quotient of the module's ring")
        return FPModule(S, self.rank, self.relations, self.shifts)

    def direct_sum(self, other: "FPModule") -> "FPModule":
        if other.ring != self.ring:
            raise AlgebraError("ring mismatch")
        shifts = None
        if self.shifts is not None and other.shifts is not None:
            shifts = self.shifts + other.shifts
        return FPModule(self.ring, self.rank + other.rank, self.relations.block_diag(other.relations), shifts)

    def element(self, comps: Sequence) -> Vec:
        return vec_from_components([self.base(c) for c in comps])

    def same_submodule(self, other: "FPModule") -> bool:
        """Equality of relation submodules inside a common free module."""
        if self.rank != other.rank or self.base != other.base:
            return False
        return all(other.is_zero_element(v) for v in self.full_relations()) and all(
            self.is_zero_element(v) for v in other.full_relations()
        )

    def __repr__(self):
        return f"FPModule(rank={self.rank}, relations={self.relations!r}, ring={self.ring!r})"


def _pure_power_bounds(leads: Sequence[Monomial], n: int) -> Optional[List[int]]:
    bounds = []
    for v in range(n):
        best = None
        for m in leads:
            if all(e == 0 for i, e in enumerate(m) if i != v):
                if best is None or m[v] < best:
                    best = m[v]
        if best is None:
            return None
        bounds.append(best)
    return bounds


def _monomials_up_to(n: int, d: int):
    for total in range(d + 1):
        for combo in itertools.combinations_with_replacement(range(n), total):
            m = [0] * n
            for i in combo:
                m[i] += 1
            yield tuple(m)


# ---------------------------------------------------------------- submodules and maps


class Submodule:
    """Submodule of ``ambient`` generated by vectors in its free cover."""

    def __init__(self, ambient: FPModule, generators: Sequence[Vec]):
        self.ambient = ambient
        self.generators = [dict(g) for g in generators]

    @cached_property
    def module(self) -> FPModule:
        """Presentation: generators of this submodule, relations their syzygies modulo ambient."""
        amb = self.ambient
        m = len(self.generators)
        rels = kernel_vectors(self.generators, amb.rank, amb.full_relations(), amb.base)
        rels = [reduce_vec_mod_ring(r, amb.ring, m) for r in rels]
        rels = [r for r in rels if r]
        shifts = None
        if amb.shifts is not None:
            degs = [vec_degree(g, amb.shifts) for g in self.generators]
            if all(d is not None for d in degs):
                shifts = degs
        return FPModule(amb.ring, m, Matrix(amb.base, m, rels), shifts)

    def is_zero(self) -> bool:
        return all(self.ambient.is_zero_element(g) for g in self.generators)

    def nonzero_generators(self) -> List[Vec]:
        return [g for g in self.generators if not self.ambient.is_zero_element(g)]

    @cached_property
    def _closure(self) -> GroebnerBasis:
        return _submodule_basis(self.generators + self.ambient.full_relations(), self.ambient.base)

    def contains(self, v: Vec) -> bool:
        return not normal_form(v, self._closure)

    def is_subset(self, other: "Submodule") -> bool:
        return all(other.contains(g) for g in self.generators)

    def equals(self, other: "Submodule") -> bool:
        return self.is_subset(other) and other.is_subset(self)

    def is_everything(self) -> bool:
        nv = self.ambient.base.nvars
        F = self.ambient.field
        return all(self.contains(unit_vec(i, nv, F)) for i in range(self.ambient.rank))


class ModuleMap:
    """Homomorphism ``source -> target`` given on generators by ``matrix`` (target.rank x source.rank)."""

    def __init__(self, source: FPModule, target: FPModule, matrix: Matrix, check: bool = True):
        if matrix.shape != (target.rank, source.rank):
            raise AlgebraError(f"map matrix shape {matrix.shape} != {(target.rank, source.rank)}")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check and not self.is_well_defined():
            raise AlgebraError("matrix does not send relations to relations")

    def is_well_defined(self) -> bool:
        return all(self.target.is_zero_element(self.matrix.apply(r)) for r in self.source.full_relations())

    def apply(self, v: Vec) -> Vec:
        return self.matrix.apply(v)

    @cached_property
    def kernel(self) -> Submodule:
        gens = kernel_vectors(self.matrix.cols, self.target.rank, self.target.full_relations(), self.source.base)
        gens = [reduce_vec_mod_ring(g, self.source.ring, self.source.rank) for g in gens]
        gens = [g for g in gens if g and not self.source.is_zero_element(g)]
        return Submodule(self.source, gens)

    @cached_property
    def image(self) -> Submodule:
        return Submodule(self.target, [c for c in self.matrix.cols])

    @cached_property
    def cokernel(self) -> FPModule:
        t = self.target
        return FPModule(t.ring, t.rank, t.relations.hstack(self.matrix), t.shifts)

    def is_injective(self) -> bool:
        return self.kernel.is_zero()

    def is_surjective(self) -> bool:
        return self.image.is_everything()

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def kernel_witness(self) -> Optional[Vec]:
        nz = self.kernel.nonzero_generators()
        return nz[0] if nz else None

    def cokernel_witness(self) -> Optional[Vec]:
        nv = self.target.base.nvars
        F = self.target.field
        for i in range(self.target.rank):
            e = unit_vec(i, nv, F)
            if not self.image.contains(e):
                return e
        return None

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``self ∘ other``."""
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix, check=False)

    def is_zero(self) -> bool:
        return all(self.target.is_zero_element(c) for c in self.matrix.cols)


def identity_map(M: FPModule) -> ModuleMap:
    return ModuleMap(M, M, Matrix.identity(M.base, M.rank), check=False)


# ---------------------------------------------------------------- operations


def kernel_of_map(F: Matrix, ring=None, source: Optional[FPModule] = None, target: Optional[FPModule] = None) -> FPModule:
    """Presentation of ``ker(F)`` for a matrix over ``ring`` (free source and target by default)."""
    R = as_quotient(ring) if ring is not None else (source.ring if source is not None else QuotientRing(F.base))
    src = source if source is not None else FPModule.free(R, F.ncols)
    tgt = target if target is not None else FPModule.free(R, F.nrows)
    return ModuleMap(src, tgt, F, check=source is not None or target is not None).kernel.module


def kernel_submodule(F: Matrix, ring) -> Submodule:
    R = as_quotient(ring)
    return ModuleMap(FPModule.free(R, F.ncols), FPModule.free(R, F.nrows), F, check=False).kernel


def syzygies(basis: Sequence[Vec], rank: int, base: PolynomialRing) -> List[Vec]:
    """Schreyer generators for the syzygies of a Gröbner basis (order of ``basis`` kept)."""
    from .groebner import schreyer_syzygies

    G = GroebnerBasis([dict(b) for b in basis], ModuleOrder(base.order), base.field)
    return schreyer_syzygies(G)


def colon_annihilator(M: FPModule, J: Ideal) -> Submodule:
    """``(0 :_M J)`` as a submodule of ``M``."""
    r = M.rank
    base = M.base
    gens = [g for g in J.gens if not g.is_zero()]
    if not gens:
        return Submodule(M, [unit_vec(i, base.nvars, M.field) for i in range(r)])
    blocks = [Matrix.identity(base, r).scale_poly(g) for g in gens]
    stacked_cols = []
    for j in range(r):
        col: Vec = {}
        for b, blk in enumerate(blocks):
            col.update(vec_shift(blk.cols[j], b * r))
        stacked_cols.append(col)
    target = M
    for _ in range(len(gens) - 1):
        target = target.direct_sum(M)
    phi = ModuleMap(M, target, Matrix(base, r * len(gens), stacked_cols), check=False)
    return phi.kernel


def tensor_modules(M: FPModule, N: FPModule) -> FPModule:
    """``M ⊗ N`` with generator ``(i, j)`` at index ``i * N.rank + j``."""
    if M.ring != N.ring:
        if M.ring.contains_ring(N.ring):
            N = N.base_change(M.ring)
        elif N.ring.contains_ring(M.ring):
            M = M.base_change(N.ring)
        else:
            raise AlgebraError("ring mismatch")
    base = M.base
    rels = M.relations.kron_identity(N.rank).hstack(N.relations.identity_kron(M.rank))
    shifts = None
    if M.shifts is not None and N.shifts is not None:
        shifts = [a + b for a in M.shifts for b in N.shifts]
    return FPModule(M.ring, M.rank * N.rank, rels, shifts)


def tensor_matrix_left(N: FPModule, D: Matrix) -> Matrix:
    """Matrix of ``id_N ⊗ D`` on ``N ⊗ R^a -> N ⊗ R^b`` (copy index major)."""
    return D.kron_identity(N.rank)


# ---------------------------------------------------------------- minimal presentations


class Undetermined(Exception):
    """Raised when a decision procedure's hypothesis does not hold."""


def is_local_artinian(R: QuotientRing) -> bool:
    """``R = K[x]/I`` with ``I`` inside the variable ideal and every variable nilpotent."""
    if not R.modulus or R.is_unit_ring():
        return False
    if any(not p.constant_term() == 0 for p in R.modulus):
        return False
    leads = [g for (_, g) in R._gb.leads]
    return _pure_power_bounds(leads, R.nvars) is not None


def graded_shifts(M: FPModule) -> Optional[Tuple[int, ...]]:
    """Generator degrees making all relations homogeneous, if such exist."""
    if any(not p.is_homogeneous() for p in M.ring.modulus):
        return None
    if M.shifts is not None and M.is_homogeneous():
        return M.shifts
    r = M.rank
    shifts: List[Optional[int]] = [None] * r
    cols = [c for c in M.relations.cols if c]
    col_deg: List[Optional[int]] = [None] * len(cols)
    for start in range(r):
        if shifts[start] is not None:
            continue
        shifts[start] = 0
        changed = True
        while changed:
            changed = False
            for j, col in enumerate(cols):
                for (i, m) in col:
                    if shifts[i] is not None:
                        d = sum(m) + shifts[i]
                        if col_deg[j] is None:
                            col_deg[j] = d
                            changed = True
                        elif col_deg[j] != d:
                            return None
                if col_deg[j] is not None:
                    for (i, m) in col:
                        s = col_deg[j] - sum(m)
                        if shifts[i] is None:
                            shifts[i] = s
                            changed = True
                        elif shifts[i] != s:
                            return None
    return tuple(shifts)


def _invert_unit(u: Polynomial, R: QuotientRing) -> Polynomial:
    base = R.base
    F = base.field
    if u.is_constant():
        return base.constant(F.inv(u.constant_term()))
    sol = lift_vector([poly_to_vec(u)], 1, poly_to_vec(base.one()), [poly_to_vec(g) for g in R.modulus], base)
    if sol is None:
        raise AlgebraError(f"{u} is not a unit")
    return R.reduce(vec_to_poly(sol, base))


class MinimalPresentation:
    """Result of pruning: ``module`` plus inverse isomorphisms to and from the input."""

    def __init__(self, original: FPModule, module: FPModule, kept: List[int], forward: Matrix):
        self.original = original
        self.module = module
        self.kept = kept
        self.forward = ModuleMap(original, module, forward, check=False)
        incl = Matrix(original.base, original.rank, [unit_vec(i, original.base.nvars, original.field) for i in kept])
        self.backward = ModuleMap(module, original, incl, check=False)

    def is_free(self) -> bool:
        return self.module.relations.is_zero()


def minimal_presentation(M: FPModule) -> MinimalPresentation:
    """Prune unit entries and redundant relations.

    Decidable when the ring is local artinian with maximal ideal generated by the
    variables, or when ring and relations are homogeneous (graded Nakayama).
    Otherwise raises :class:`Undetermined`.
    """
    R = M.ring
    base = M.base
    F = M.field
    local = is_local_artinian(R)
    shifts = None if local else graded_shifts(M)
    if not local and shifts is None:
        raise Undetermined("ring is neither local artinian nor graded for this presentation")

    rows = list(range(M.rank))
    cols = [reduce_vec_mod_ring(c, R, M.rank) for c in M.relations.cols]
    cols = [c for c in cols if c]
    # forward[i] expresses original generator i in terms of original generators (kept ones only at the end)
    forward = {i: unit_vec(i, base.nvars, F) for i in rows}

    def entry(col, i):
        return vec_to_poly(col, base, i)

    while True:
        pivot = None
        for j, col in enumerate(cols):
            for i in sorted({q for (q, _) in col}):
                e = entry(col, i)
                if e.constant_term() != 0 and (local or e.is_constant()):
                    pivot = (j, i)
                    break
            if pivot:
                break
        if pivot is None:
            break
        j, i = pivot
        c = cols[j]
        ci = entry(c, i)
        inv = _invert_unit(ci, R)
        # e_i = -inv * sum_{l != i} c_l e_l
        sub: Vec = {}
        for (q, m), v in c.items():
            if q != i:
                sub[(q, m)] = v
        sub = reduce_vec_mod_ring(vec_mul_poly(sub, -inv, F), R, M.rank)
        new_cols = []
        for jj, d in enumerate(cols):
            if jj == j:
                continue
            di = entry(d, i)
            if di.is_zero():
                new_cols.append(d)
                continue
            nd = {t: v for t, v in d.items() if t[0] != i}
            nd = vec_add(nd, vec_mul_poly(sub, di, F), F)
            nd = reduce_vec_mod_ring(nd, R, M.rank)
            if nd:
                new_cols.append(nd)
        cols = new_cols
        for g, expr in forward.items():
            ei = vec_to_poly(expr, base, i)
            if ei.is_zero():
                continue
            ne = {t: v for t, v in expr.items() if t[0] != i}
            ne = vec_add(ne, vec_mul_poly(sub, ei, F), F)
            forward[g] = reduce_vec_mod_ring(ne, R, M.rank)
        rows.remove(i)

    # drop relations lying in the span of the others
    kept_cols = list(cols)
    idx = 0
    while idx < len(kept_cols):
        others = kept_cols[:idx] + kept_cols[idx + 1 :]
        full = others + [poly_to_vec(g, q) for g in R.modulus for q in rows]
        G = _submodule_basis(full, base)
        if not normal_form(kept_cols[idx], G):
            kept_cols.pop(idx)
        else:
            idx += 1

    where = {old: new for new, old in enumerate(rows)}

    def renumber(v: Vec) -> Vec:
        return {(where[q], m): c for (q, m), c in v.items()}

    new_shifts = None
    src_shifts = M.shifts if M.shifts is not None else shifts
    if src_shifts is not None:
        new_shifts = [src_shifts[i] for i in rows]
    module = FPModule(R, len(rows), Matrix(base, len(rows), [renumber(c) for c in kept_cols]), new_shifts)
    fwd = Matrix(base, len(rows), [renumber(forward[i]) for i in range(M.rank)])
    return MinimalPresentation(M, module, rows, fwd)


def is_flat_over_ring(M: FPModule) -> Tuple[Optional[bool], Optional[MinimalPresentation]]:
    """(True/False, witness) when decidable, (None, None) otherwise."""
    try:
        mp = minimal_presentation(M)
    except Undetermined:
        return None, None
    return mp.is_free(), mp


def minimize_generators(gens: Sequence[Vec], ambient: FPModule, shifts: Optional[Sequence[int]] = None) -> List[Vec]:
    """Drop generators lying in the span of the kept ones plus the ambient relations.

    Generators are visited by increasing degree then leading term so that in the
    graded and local cases the result is a minimal generating set.
    """
    base = ambient.base
    order = ModuleOrder(base.order)
    amb_shifts = shifts if shifts is not None else ambient.shifts

    def sort_key(v):
        d = vec_degree(v, amb_shifts)
        if d is None:
            d = max(sum(m) for (_, m) in v)
        return (d, order.key(order.leading(v)))

    cand = sorted((g for g in gens if g and not ambient.is_zero_element(g)), key=sort_key)
    kept: List[Vec] = []
    rels = ambient.full_relations()
    G = _submodule_basis(rels, base)
    for g in cand:
        if normal_form(g, G):
            kept.append(g)
            G = _submodule_basis(kept + rels, base)
    # second pass: later generators may make earlier ones redundant in ungraded cases
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1 :]
        Go = _submodule_basis(others + rels, base)
        if not normal_form(kept[i], Go):
            kept.pop(i)
        else:
            i += 1
    return kept
