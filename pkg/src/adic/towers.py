"""Adic systems truncated at a finite level, their morphisms and limit-free checks.

An adic system is stored as its levels ``M_0 .. M_K`` (``M_k`` over
``A_k = A / a^{k+1}``) and transitions ``nu_k : M_{k+1} -> M_k``.  Limits are
never formed; statements about them are checked level by level.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

from .algebra import AlgebraError
from .modules import (
    FPModule,
    Ideal,
    Matrix,
    ModuleMap,
    QuotientRing,
    Submodule,
    adic_quotient,
    colon_annihilator,
    tensor_modules,
)
from .verdict import FAIL, PASS, UNDETERMINED, Verdict, Witness

DEFAULT_SATURATION_BOUND = 32


def _on_level(M: FPModule, R: QuotientRing) -> FPModule:
    if M.ring == R:
        return M
    if R.contains_ring(M.ring):
        return M.base_change(R)
    raise AlgebraError(f"module over {M.ring!r} cannot be read over {R!r}")


class AdicTower:
    """Levels ``M_0..M_kmax`` with transitions ``nu_k`` (rank M_k x rank M_{k+1})."""

    def __init__(self, ideal: Ideal, modules: Sequence[FPModule], transitions: Optional[Sequence[Matrix]] = None):
        if not modules:
            raise AlgebraError("a tower needs at least one level")
        self.ideal = ideal
        self.kmax = len(modules) - 1
        self.rings = [adic_quotient(ideal, k) for k in range(self.kmax + 1)]
        self.modules = [_on_level(M, R) for M, R in zip(modules, self.rings)]
        base = ideal.ring.base
        if transitions is None:
            transitions = []
            for k in range(self.kmax):
                if self.modules[k].rank != self.modules[k + 1].rank:
                    raise AlgebraError("default transitions need equal ranks")
                transitions.append(Matrix.identity(base, self.modules[k].rank))
        if len(transitions) != self.kmax:
            raise AlgebraError("need one transition per consecutive pair of levels")
        for k, nu in enumerate(transitions):
            if nu.shape != (self.modules[k].rank, self.modules[k + 1].rank):
                raise AlgebraError(f"transition {k} has shape {nu.shape}")
        self.transitions = list(transitions)

    def level(self, k: int) -> FPModule:
        return self.modules[k]

    def transition_map(self, k: int) -> ModuleMap:
        """``nu_k : M_{k+1} -> M_k`` (unchecked)."""
        return ModuleMap(self.modules[k + 1], self.modules[k], self.transitions[k], check=False)

    def comparison_map(self, k: int) -> ModuleMap:
        """``A_k ⊗ M_{k+1} -> M_k`` induced by ``nu_k``."""
        src = self.modules[k + 1].base_change(self.rings[k])
        return ModuleMap(src, self.modules[k], self.transitions[k], check=False)

    def truncate(self, kmax: int) -> "AdicTower":
        return AdicTower(self.ideal, self.modules[: kmax + 1], self.transitions[:kmax])

    def __repr__(self):
        return f"AdicTower(levels={self.kmax + 1}, ranks={[M.rank for M in self.modules]})"


class TowerMorphism:
    """Levelwise maps ``phi_k : T_k -> S_k``."""

    def __init__(self, source: AdicTower, target: AdicTower, maps: Sequence[Matrix]):
        if source.kmax != target.kmax or len(maps) != source.kmax + 1:
            raise AlgebraError("morphism needs one map per level of equally long towers")
        self.source = source
        self.target = target
        self.maps = list(maps)

    def level_map(self, k: int) -> ModuleMap:
        return ModuleMap(self.source.modules[k], self.target.modules[k], self.maps[k], check=False)

    def square_defect(self, k: int):
        """Generator of ``T_{k+1}`` on which ``phi_k nu_k`` and ``nu_k phi_{k+1}`` differ, or None."""
        lhs = self.maps[k] @ self.source.transitions[k]
        rhs = self.target.transitions[k] @ self.maps[k + 1]
        diff = lhs - rhs
        tgt = self.target.modules[k]
        for j, col in enumerate(diff.cols):
            if not tgt.is_zero_element(col):
                return j, col
        return None


def identity_morphism(T: AdicTower) -> TowerMorphism:
    base = T.ideal.ring.base
    return TowerMorphism(T, T, [Matrix.identity(base, M.rank) for M in T.modules])


# ---------------------------------------------------------------- constructions


def induced_tower(M: FPModule, ideal: Ideal, kmax: int) -> AdicTower:
    """``M_k = A_k ⊗ M`` with the canonical surjections as transitions."""
    levels = [M.base_change(adic_quotient(ideal, k)) for k in range(kmax + 1)]
    return AdicTower(ideal, levels)


def finite_support_module(z: int, M: FPModule):
    """``F_fin(Z, A) ⊗ M`` for ``|Z| = z`` and the witnessed map onto ``⊕_{Z} M``."""
    if z < 1:
        raise AlgebraError("Z must be nonempty")
    total = M
    for _ in range(z - 1):
        total = total.direct_sum(M)
    tens = tensor_modules(FPModule.free(M.ring, z), M)
    phi = ModuleMap(tens, total, Matrix.identity(M.base, total.rank))
    return total, phi


# ---------------------------------------------------------------- validation


def validate_tower(T: AdicTower) -> Verdict:
    """Check that every ``A_k ⊗ M_{k+1} -> M_k`` is well defined and bijective."""
    per_level = {}
    for k in range(T.kmax):
        phi = T.comparison_map(k)
        base = T.ideal.ring.base
        if not phi.is_well_defined():
            bad = next(r for r in phi.source.full_relations() if not phi.target.is_zero_element(phi.apply(r)))
            w = Witness("ill-defined-transition", f"a relation of M_{k + 1} is not sent to zero in M_{k}",
                        bad, phi.source.rank, base, level=k)
            return Verdict("tower-validate", FAIL, f"transition {k} is not a homomorphism", [w],
                           {"levels": per_level}, {"kmax": T.kmax}, k)
        kw = phi.kernel_witness()
        if kw is not None:
            w = Witness("kernel-element", f"nonzero element of A_{k} ⊗ M_{k + 1} mapping to 0 in M_{k}",
                        kw, phi.source.rank, base, level=k)
            return Verdict("tower-validate", FAIL, f"comparison map at level {k} is not injective", [w],
                           {"levels": per_level}, {"kmax": T.kmax}, k)
        cw = phi.cokernel_witness()
        if cw is not None:
            w = Witness("cokernel-element", f"generator of M_{k} outside the image of A_{k} ⊗ M_{k + 1}",
                        cw, phi.target.rank, base, level=k)
            return Verdict("tower-validate", FAIL, f"comparison map at level {k} is not surjective", [w],
                           {"levels": per_level}, {"kmax": T.kmax}, k)
        per_level[k] = PASS
    return Verdict("tower-validate", PASS, f"adic system condition holds at levels 0..{T.kmax}",
                   details={"levels": per_level}, bounds={"kmax": T.kmax})


# ---------------------------------------------------------------- torsion


@dataclass
class TorsionResult:
    submodule: Submodule
    level: Optional[int]
    verdict: Verdict

    @property
    def is_torsion_module(self) -> bool:
        return self.submodule.is_everything()


def torsion_submodule(M: FPModule, ideal: Ideal, bound: int = DEFAULT_SATURATION_BOUND) -> TorsionResult:
    """``Γ_a(M) = (0 :_M a^{k+1})`` at the first ``k`` where the ascending chain stops.

    Equality of two consecutive annihilators already forces stabilization, so
    the first repeat is certain; beyond ``bound`` the answer is undetermined.
    """
    prev = colon_annihilator(M, ideal.power(1))
    for k in range(bound):
        nxt = colon_annihilator(M, ideal.power(k + 2))
        if nxt.is_subset(prev):
            full = prev.is_everything()
            summary = "M is a-torsion" if full else f"torsion submodule stabilizes at k={k}"
            v = Verdict("torsion", PASS, summary, details={"stabilization_level": k, "torsion_module": full},
                        bounds={"saturation_bound": bound})
            return TorsionResult(prev, k, v)
        prev = nxt
    v = Verdict("torsion", UNDETERMINED, f"annihilator chain still growing at k={bound}",
                bounds={"saturation_bound": bound})
    return TorsionResult(prev, None, v)


def is_torsion_module(N: FPModule, ideal: Ideal, bound: int = DEFAULT_SATURATION_BOUND) -> Optional[bool]:
    res = torsion_submodule(N, ideal, bound)
    if res.level is None:
        return None
    return res.is_torsion_module


# ---------------------------------------------------------------- Mittag-Leffler


def ml_kernel_tower_check(T: AdicTower, S: AdicTower, phi: TowerMorphism,
                          require_surjective: bool = True) -> Verdict:
    """Surjectivity of ``L_{k+1} -> L_k`` for the kernels ``L_k = ker(phi_k)``.

    With ``require_surjective`` the levelwise maps must be onto as well.
    """
    base = T.ideal.ring.base
    bounds = {"kmax": T.kmax}
    for k in range(T.kmax):
        d = phi.square_defect(k)
        if d is not None:
            j, col = d
            w = Witness("non-commuting-square", f"generator {j} of T_{k + 1} breaks the square at level {k}",
                        col, S.modules[k].rank, base, level=k)
            return Verdict("ml-kernels", FAIL, "morphism does not commute with transitions", [w], {}, bounds, k)
    for k in range(T.kmax + 1 if require_surjective else 0):
        cw = phi.level_map(k).cokernel_witness()
        if cw is not None:
            w = Witness("cokernel-element", f"phi_{k} is not surjective", cw, S.modules[k].rank, base, level=k)
            return Verdict("ml-kernels", FAIL, "morphism is not levelwise surjective", [w], {}, bounds, k)
    kernels = [phi.level_map(k).kernel for k in range(T.kmax + 1)]
    sizes = {k: len(L.nonzero_generators()) for k, L in enumerate(kernels)}
    for k in range(T.kmax):
        nu = T.transitions[k]
        image = Submodule(T.modules[k], [nu.apply(g) for g in kernels[k + 1].generators])
        for g in kernels[k].generators:
            if not image.contains(g):
                w = Witness("surviving-kernel-element", f"element of L_{k} not hit by L_{k + 1}",
                            g, T.modules[k].rank, base, level=k)
                return Verdict("ml-kernels", FAIL, f"L_{k + 1} -> L_{k} is not surjective", [w],
                               {"kernel_generators": sizes}, bounds, k)
    return Verdict("ml-kernels", PASS, f"kernel transitions surjective at levels 0..{T.kmax - 1}",
                   details={"kernel_generators": sizes}, bounds=bounds)


def completion_levels(M: FPModule, ideal: Ideal, kmax: int) -> AdicTower:
    """``A_k ⊗_A M̂`` for the completion surrogate: M's presentation tensored with ``A/a^{k+1}``.

    The levels are built with the block tensor construction (the powers of
    ``a`` become explicit relations over ``A``) and then read over ``A_k``.
    """
    levels = []
    for k in range(kmax + 1):
        Ak = FPModule.cyclic(ideal.ring, ideal.power(k + 1).gens)
        levels.append(tensor_modules(Ak, M))
    return AdicTower(ideal, levels)


def presentation_cover(M: FPModule, ideal: Ideal, kmax: int):
    """Induced towers of ``A^r`` and ``M`` with the levelwise surjection ``A_k^r -> M_k``."""
    F = induced_tower(FPModule.free(M.ring, M.rank), ideal, kmax)
    T = induced_tower(M, ideal, kmax)
    base = ideal.ring.base
    phi = TowerMorphism(F, T, [Matrix.identity(base, M.rank) for _ in range(kmax + 1)])
    return F, T, phi


def check_completion_comparison(M: FPModule, ideal: Ideal, kmax: int) -> Verdict:
    """``A_k ⊗ M̂ -> M_k`` bijective for ``k <= kmax``, with ML of the comparison kernels."""
    base = ideal.ring.base
    bounds = {"kmax": kmax}
    T = induced_tower(M, ideal, kmax)
    C = completion_levels(M, ideal, kmax)
    levels = {}
    for k in range(kmax + 1):
        phi = ModuleMap(C.modules[k], T.modules[k], Matrix.identity(base, M.rank), check=False)
        psi = ModuleMap(T.modules[k], C.modules[k], Matrix.identity(base, M.rank), check=False)
        if not (phi.is_well_defined() and psi.is_well_defined()):
            w = Witness("ill-defined-comparison", f"comparison at level {k} is not a homomorphism", level=k)
            return Verdict("completion", FAIL, "comparison map ill defined", [w], {"levels": levels}, bounds, k)
        kw = phi.kernel_witness()
        cw = phi.cokernel_witness()
        if kw is not None or cw is not None:
            vec = kw if kw is not None else cw
            rank = phi.source.rank if kw is not None else phi.target.rank
            w = Witness("kernel-element" if kw is not None else "cokernel-element",
                        f"A_{k} ⊗ M̂ -> M_{k} is not bijective", vec, rank, base, level=k)
            return Verdict("completion", FAIL, f"comparison fails at level {k}", [w], {"levels": levels}, bounds, k)
        levels[k] = PASS
    ident = TowerMorphism(C, T, [Matrix.identity(base, M.rank) for _ in range(kmax + 1)])
    ml_cmp = ml_kernel_tower_check(C, T, ident)
    F, T2, cover = presentation_cover(M, ideal, kmax)
    ml_cover = ml_kernel_tower_check(F, T2, cover)
    details = {"levels": levels, "comparison_kernels_ml": ml_cmp.status, "cover_kernels_ml": ml_cover.status,
               "cover_kernel_generators": ml_cover.details.get("kernel_generators", {})}
    for part in (ml_cmp, ml_cover):
        if not part.passed:
            return Verdict("completion", part.status, part.summary, part.witnesses, details, bounds, part.failing_level)
    return Verdict("completion", PASS, f"A_k ⊗ M̂ ≅ M_k for k <= {kmax}; kernel towers Mittag-Leffler",
                   details=details, bounds=bounds)

