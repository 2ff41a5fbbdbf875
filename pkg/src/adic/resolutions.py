"""Free resolutions, Tor, and resolutions of adic systems by Nakayama lifting."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .algebra import AlgebraError
from .complexes import ChainComplex, tensor_module_complex
from .modules import (
    FPModule,
    Matrix,
    ModuleMap,
    QuotientRing,
    Submodule,
    Undetermined,
    graded_shifts,
    lift_vector,
    minimal_presentation,
    minimize_generators,
    poly_to_vec,
    reduce_vec_mod_ring,
    vec_degree,
)
from .towers import AdicTower, validate_tower
from .verdict import FAIL, PASS, Verdict, Witness


class FreeResolution:
    """``P^{-L} -> ... -> P^0 --eta--> M``.

    ``complete`` records that the kernel of the last differential is zero, so
    the complex is a full (finite) resolution rather than a truncation.
    """

    def __init__(self, module: FPModule, complex: ChainComplex, augmentation: Matrix, complete: bool):
        self.module = module
        self.complex = complex
        self.augmentation = augmentation
        self.complete = complete

    @property
    def ring(self) -> QuotientRing:
        return self.complex.ring

    @property
    def length(self) -> int:
        return -self.complex.lo

    def ranks(self) -> List[int]:
        return [self.complex.rank(-j) for j in range(self.length + 1)]

    def differential(self, j: int) -> Matrix:
        """``d : P^{-j} -> P^{-j+1}`` for ``j >= 1``."""
        return self.complex.differential(-j)

    def augmentation_map(self) -> ModuleMap:
        """``coker(P^{-1} -> P^0) -> M`` induced by the augmentation."""
        return ModuleMap(self.complex.boundary_ambient(0), self.module, self.augmentation, check=False)

    def covers(self, i: int) -> bool:
        """True when ``H^{-i}`` of tensored complexes is computable from this resolution."""
        return self.complete or i < self.length

    def verify(self) -> Verdict:
        base = self.ring.base
        last = self.length if self.complete else self.length - 1
        for j in range(1, last + 1):
            H = self.complex.homology_submodule(-j)
            nz = H.nonzero_generators()
            if nz:
                w = Witness("homology-class", f"P is not exact at degree {-j}", nz[0], self.complex.rank(-j), base, degree=-j)
                return Verdict("resolution", FAIL, f"not exact at degree {-j}", [w], bounds={"length": self.length})
        eta = self.augmentation_map()
        if not eta.is_well_defined():
            w = Witness("ill-defined-augmentation", "augmentation does not kill the image of P^{-1}")
            return Verdict("resolution", FAIL, "augmentation ill defined", [w])
        kw, cw = eta.kernel_witness(), eta.cokernel_witness()
        if kw is not None or cw is not None:
            w = Witness("kernel-element" if kw is not None else "cokernel-element",
                        "H^0(P) -> M is not bijective", kw if kw is not None else cw,
                        eta.source.rank if kw is not None else eta.target.rank, base, degree=0)
            return Verdict("resolution", FAIL, "augmentation is not an isomorphism on H^0", [w])
        return Verdict("resolution", PASS, f"exact resolution of length {self.length}",
                       details={"ranks": self.ranks(), "complete": self.complete}, bounds={"length": self.length})

    def __repr__(self):
        return f"FreeResolution(ranks={self.ranks()}, complete={self.complete})"


def _kernel_generators(d: Matrix, R: QuotientRing, nsrc: int) -> List[dict]:
    phi = ModuleMap(FPModule.free(R, nsrc), FPModule.free(R, d.nrows), d, check=False)
    return phi.kernel.generators


def _shifts_of(cols, shifts):
    if shifts is None:
        return None
    out = [vec_degree(c, shifts) for c in cols]
    return None if any(s is None for s in out) else out


def free_resolution(M: FPModule, length: int = 4) -> FreeResolution:
    """Resolve ``M`` by free modules, computing at most ``length`` differentials.

    Generators and syzygies are pruned to minimal sets whenever the ring is
    graded or local artinian, so the result is minimal in those cases.
    """
    if length < 0:
        raise AlgebraError("length must be non-negative")
    R = M.ring
    base = M.base
    try:
        mp = minimal_presentation(M)
        pres, aug = mp.module, mp.backward.matrix
    except Undetermined:
        pres, aug = M, Matrix.identity(base, M.rank)
    shifts = graded_shifts(pres)
    r0 = pres.rank
    rels = [reduce_vec_mod_ring(c, R, r0) for c in pres.relations.cols]
    cur = minimize_generators(rels, FPModule.free(R, r0), shifts)
    ranks = {0: r0}
    degree_shifts = {0: shifts}
    diffs: Dict[int, Matrix] = {}
    rows, row_shifts = r0, shifts
    complete = False
    j = 1
    while True:
        if not cur:
            complete = True
            break
        if j > length:
            break
        d = Matrix(base, rows, cur).reduce_mod(R)
        diffs[-j] = d
        ranks[-j] = len(cur)
        new_shifts = _shifts_of(cur, row_shifts)
        degree_shifts[-j] = new_shifts
        ker = _kernel_generators(d, R, len(cur))
        rows, row_shifts = len(cur), new_shifts
        cur = minimize_generators(ker, FPModule.free(R, rows), new_shifts)
        j += 1
    terms = {i: FPModule(R, r, shifts=degree_shifts.get(i)) for i, r in ranks.items()}
    P = ChainComplex(R, terms, diffs, check=False)
    return FreeResolution(M, P, aug, complete)


# ---------------------------------------------------------------- Tor


def tor_classes(N: FPModule, M: FPModule, i: int, resolution: Optional[FreeResolution] = None) -> Submodule:
    """``Tor_i(N, M) = H^{-i}(N ⊗ P)`` for a free resolution ``P`` of ``M``, as a subquotient."""
    if i < 0:
        raise AlgebraError("Tor index must be non-negative")
    P = resolution if resolution is not None else free_resolution(M, i + 1)
    if not P.covers(i):
        raise AlgebraError(f"resolution of length {P.length} cannot compute Tor_{i}")
    C = tensor_module_complex(N, P.complex)
    return C.homology_submodule(-i)


def tor(N: FPModule, M: FPModule, i: int, resolution: Optional[FreeResolution] = None) -> FPModule:
    H = tor_classes(N, M, i, resolution)
    if H.is_zero():
        return FPModule.zero(H.ambient.ring)
    return H.module


def tor_dimension(N: FPModule, M: FPModule, i: int, resolution: Optional[FreeResolution] = None) -> Optional[int]:
    H = tor_classes(N, M, i, resolution)
    return 0 if H.is_zero() else H.module.vector_space_dim()


def tor_hilbert_function(N: FPModule, M: FPModule, i: int, max_degree: int,
                         resolution: Optional[FreeResolution] = None) -> Optional[List[int]]:
    """Graded pieces of ``Tor_i(N, M)`` in degrees ``0..max_degree``; None if no grading is available."""
    H = tor_classes(N, M, i, resolution)
    if H.is_zero():
        return [0] * (max_degree + 1)
    T = H.module
    return T.hilbert_function(max_degree) if T.shifts is not None else None


def _tor_witness(H: Submodule, i: int, level: Optional[int], what: str) -> Witness:
    g = H.nonzero_generators()[0]
    dim = H.module.vector_space_dim()
    return Witness("tor-class", what, g, H.ambient.rank, H.ambient.base, level=level, degree=-i,
                   extra={"tor_index": i, "dimension": dim})


def first_nonzero_tor(N: FPModule, M: FPModule, depth: int, resolution: Optional[FreeResolution] = None):
    """``(i, classes)`` for the least ``1 <= i <= depth`` with ``Tor_i(N, M) != 0``, else None."""
    P = resolution if resolution is not None else free_resolution(M, depth + 1)
    for i in range(1, depth + 1):
        if not P.covers(i):
            break
        H = tor_classes(N, M, i, P)
        if not H.is_zero():
            return i, H
    return None


# ---------------------------------------------------------------- lifting


@dataclass
class LiftOutcome:
    resolution: Optional[FreeResolution]
    verdict: Verdict


def _lower_ring_as_module(lower: QuotientRing, upper: QuotientRing) -> FPModule:
    """``A_k`` viewed as an ``A_{k+1}``-module."""
    return FPModule.cyclic(upper, lower.modulus)


def lift_resolution(res_k: FreeResolution, M_next: FPModule, nu: Matrix, depth: int = 4) -> LiftOutcome:
    """Lift a resolution over ``A_k`` to one of ``M_next`` over ``A_{k+1}`` with the same ranks.

    The Tor obstruction ``Tor_i^{A_{k+1}}(A_k, M_next)`` for ``1 <= i <= depth``
    is computed first; a nonzero class is returned as the failure witness.
    Preimages are the normal-form-minimal solutions of the lifting problems.
    """
    lower, upper = res_k.ring, M_next.ring
    level = lower.level
    if not lower.contains_ring(upper):
        raise AlgebraError("the resolution must live over a quotient of the module's ring")
    base = upper.base
    bounds = {"depth": depth, "length": res_k.length}
    Ak = _lower_ring_as_module(lower, upper)
    obstruction = first_nonzero_tor(Ak, M_next, depth)
    if obstruction is not None:
        i, H = obstruction
        w = _tor_witness(H, i, level, f"nonzero Tor_{i} over the level-{level + 1 if level is not None else '?'} ring")
        return LiftOutcome(None, Verdict("lift", FAIL, f"Tor_{i} obstruction to lifting", [w], {"tor_index": i}, bounds, level))

    M_k = res_k.module
    # augmentation: lift each eta_k(e_z) through nu
    eta_cols = []
    for z, target in enumerate(res_k.augmentation.cols):
        u = lift_vector(list(nu.cols), M_k.rank, target, M_k.full_relations(), base)
        if u is None:
            w = Witness("cokernel-element", "augmentation target has no preimage under the transition",
                        target, M_k.rank, base, level=level)
            return LiftOutcome(None, Verdict("lift", FAIL, "transition is not surjective", [w], {}, bounds, level))
        eta_cols.append(reduce_vec_mod_ring(u, upper, M_next.rank))
    r0 = res_k.complex.rank(0)
    eta = Matrix(base, M_next.rank, eta_cols)
    eta_map = ModuleMap(FPModule.free(upper, r0), M_next, eta, check=False)
    cw = eta_map.cokernel_witness()
    if cw is not None:
        w = Witness("cokernel-element", "lifted augmentation is not surjective", cw, M_next.rank, base, level=level)
        return LiftOutcome(None, Verdict("lift", FAIL, "Nakayama lift of generators failed", [w], {}, bounds, level))

    diffs: Dict[int, Matrix] = {}
    kernel = eta_map.kernel.generators
    rows = r0
    for j in range(1, res_k.length + 1):
        d_low = res_k.differential(j)
        # congruence modulo a^{k+1}; the upper modulus lies inside it
        rel = [poly_to_vec(g, q) for g in lower.modulus for q in range(rows)]
        cols = []
        for c in d_low.cols:
            w_coeff = lift_vector(kernel, rows, c, rel, base)
            if w_coeff is None:
                wit = Witness("unliftable-column", f"column of d^{-j} has no lift into the kernel", c, rows, base, level=level, degree=-j)
                return LiftOutcome(None, Verdict("lift", FAIL, f"cannot lift d at degree {-j}", [wit], {}, bounds, level))
            u: dict = {}
            F = base.field
            for (l, m), coeff in w_coeff.items():
                for (q, m2), c2 in kernel[l].items():
                    t = (q, tuple(a + b for a, b in zip(m, m2)))
                    s = F.add(u.get(t, 0), F.mul(coeff, c2))
                    if s:
                        u[t] = s
                    else:
                        u.pop(t, None)
            cols.append(reduce_vec_mod_ring(u, upper, rows))
        d = Matrix(base, rows, cols)
        image = Submodule(FPModule.free(upper, rows), cols)
        missing = next((g for g in kernel if not image.contains(g)), None)
        if missing is not None:
            wit = Witness("homology-class", f"lifted complex is not exact at degree {-j + 1}", missing, rows, base,
                          level=level, degree=-j + 1)
            return LiftOutcome(None, Verdict("lift", FAIL, f"lift not exact at degree {-j + 1}", [wit], {}, bounds, level))
        diffs[-j] = d
        kernel = _kernel_generators(d, upper, d.ncols)
        rows = d.ncols
    if res_k.complete and any(kernel):
        wit = Witness("homology-class", "kernel of the last lifted differential is nonzero", kernel[0], rows, base,
                      level=level, degree=-res_k.length)
        return LiftOutcome(None, Verdict("lift", FAIL, "lifted resolution is longer than the original", [wit], {}, bounds, level))
    ranks = {-j: res_k.complex.rank(-j) for j in range(res_k.length + 1)}
    P = ChainComplex.free(upper, ranks, diffs)
    res = FreeResolution(M_next, P, eta, res_k.complete)
    return LiftOutcome(res, Verdict("lift", PASS, f"lifted resolution with ranks {res.ranks()}",
                                    details={"ranks": res.ranks()}, bounds=bounds))


# ---------------------------------------------------------------- systems


@dataclass
class SystemResolution:
    tower: AdicTower
    resolutions: List[FreeResolution]
    verdict: Verdict
    verticals: List[Dict[int, Matrix]] = field(default_factory=list)

    @property
    def succeeded(self) -> bool:
        return self.verdict.passed

    def vertical(self, k: int) -> Dict[int, Matrix]:
        """Components of ``P_{k+1} -> P_k`` (identity matrices unless replaced)."""
        if k < len(self.verticals):
            return self.verticals[k]
        base = self.tower.ideal.ring.base
        P = self.resolutions[k]
        return {-j: Matrix.identity(base, P.complex.rank(-j)) for j in range(P.length + 1)}


def system_resolution(T: AdicTower, length: int = 3, depth: int = 4) -> SystemResolution:
    """Resolve level 0 directly, then lift level by level."""
    bounds = {"kmax": T.kmax, "length": length, "depth": depth}
    valid = validate_tower(T)
    if not valid.passed:
        return SystemResolution(T, [], Verdict("system-resolution", valid.status, "tower is not an adic system",
                                               valid.witnesses, valid.details, bounds, valid.failing_level))
    res = [free_resolution(T.modules[0], length)]
    for k in range(T.kmax):
        out = lift_resolution(res[k], T.modules[k + 1], T.transitions[k], depth)
        if out.resolution is None:
            v = out.verdict
            return SystemResolution(T, res, Verdict("system-resolution", FAIL, f"lift from level {k} to {k + 1}: {v.summary}",
                                                    v.witnesses, {"lifted_levels": k, **v.details}, bounds, k))
        res.append(out.resolution)
    SR = SystemResolution(T, res, Verdict("system-resolution", PASS,
                                          f"resolution of levels 0..{T.kmax} with ranks {res[0].ranks()}",
                                          details={"ranks": res[0].ranks(), "complete": res[0].complete}, bounds=bounds))
    SR.verticals = [SR.vertical(k) for k in range(T.kmax)]
    return SR


def levelwise_tor_obstructions(T: AdicTower, depth: int = 4) -> List[Tuple[int, int, Optional[int]]]:
    """All ``(k, i, dim)`` with ``Tor_i^{A_{k+1}}(A_k, M_{k+1}) != 0``, ``1 <= i <= depth``."""
    out = []
    for k in range(T.kmax):
        upper = T.rings[k + 1]
        Ak = _lower_ring_as_module(T.rings[k], upper)
        M = T.modules[k + 1]
        P = free_resolution(M, depth + 1)
        for i in range(1, depth + 1):
            if not P.covers(i):
                break
            H = tor_classes(Ak, M, i, P)
            if not H.is_zero():
                out.append((k, i, H.module.vector_space_dim()))
    return out


def _square_defect(d_low: Matrix, v_src: Matrix, v_tgt: Matrix, d_up: Matrix, target: FPModule):
    diff = (d_low @ v_src) - (v_tgt @ d_up)
    for j, c in enumerate(diff.cols):
        if not target.is_zero_element(c):
            return j, c
    return None


def check_base_change_compatibility(SR: SystemResolution) -> Verdict:
    """Base change of level ``k+1`` reproduces level ``k``; every level is exact."""
    T = SR.tower
    base = T.ideal.ring.base
    bounds = dict(SR.verdict.bounds)
    if not SR.succeeded:
        return Verdict("lemma290", SR.verdict.status, "system resolution unavailable: " + SR.verdict.summary,
                       SR.verdict.witnesses, {}, bounds, SR.verdict.failing_level)
    levels = {}
    for k, P in enumerate(SR.resolutions):
        v = P.verify()
        if not v.passed:
            for w in v.witnesses:
                w.level = k
            return Verdict("lemma290", FAIL, f"level {k}: {v.summary}", v.witnesses, {"levels": levels}, bounds, k)
        levels[k] = PASS
    for k in range(T.kmax):
        up, low = SR.resolutions[k + 1], SR.resolutions[k]
        V = SR.vertical(k)
        for j in range(1, low.length + 1):
            t = _square_defect(low.differential(j), V[-j], V[-j + 1], up.differential(j), low.complex.term(-j + 1))
            if t is not None:
                col, vec = t
                w = Witness("non-commuting-square", f"square at degree {-j} between levels {k + 1} and {k}",
                            vec, low.complex.rank(-j + 1), base, level=k, degree=-j, extra={"column": col})
                return Verdict("lemma290", FAIL, f"vertical map is not a chain map at level {k}", [w], {"levels": levels}, bounds, k)
            if up.differential(j).reduce_mod(low.ring) != low.differential(j).reduce_mod(low.ring):
                w = Witness("matrix-mismatch", f"d at degree {-j} not congruent modulo the level-{k} ideal", level=k, degree=-j)
                return Verdict("lemma290", FAIL, f"base change mismatch at level {k}", [w], {"levels": levels}, bounds, k)
        aug = _square_defect(T.transitions[k], up.augmentation, low.augmentation, V[0], T.modules[k])
        if aug is not None:
            col, vec = aug
            w = Witness("non-commuting-square", f"augmentation square between levels {k + 1} and {k}",
                        vec, T.modules[k].rank, base, level=k, degree=0, extra={"column": col})
            return Verdict("lemma290", FAIL, f"augmentations incompatible at level {k}", [w], {"levels": levels}, bounds, k)
    return Verdict("lemma290", PASS, f"base changes reproduce every level 0..{T.kmax}", details={"levels": levels}, bounds=bounds)
