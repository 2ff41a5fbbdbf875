"""Adic flatness: the three equivalent conditions checked to finite depth and level,
plus the finite-level content of the completion and limit-flatness statements."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from .complexes import tensor_module_complex
from .modules import FPModule, Ideal, Matrix, ModuleMap, adic_quotient, is_flat_over_ring, poly_to_vec
from .resolutions import FreeResolution, SystemResolution, free_resolution, tor_classes
from .towers import AdicTower, TowerMorphism, induced_tower, is_torsion_module, ml_kernel_tower_check
from .verdict import FAIL, PASS, UNDETERMINED, Verdict, Witness

DEFAULT_DEPTH = 4
DEFAULT_KMAX = 4


def default_torsion_tests(ideal: Ideal) -> List[FPModule]:
    """``A_0``, ``A_1``, ``A_1/(first variable)`` and ``A/(a_1^2, a_2, ..., a_n)``.

    ``A_0/(first variable)`` would repeat ``A_0`` whenever that variable lies in
    ``a``, so the quotient is taken one level up.
    """
    A = ideal.ring
    base = A.base
    gens = list(ideal.gens)
    tests = [
        FPModule.cyclic(A, ideal.power(1).gens),
        FPModule.cyclic(A, ideal.power(2).gens),
        FPModule.cyclic(A, list(ideal.power(2).gens) + [base.var(0)]),
        FPModule.cyclic(A, [gens[0] ** 2] + gens[1:]),
    ]
    return tests


def _flatness_witness(M: FPModule, level: int) -> Witness:
    flat, mp = is_flat_over_ring(M)
    col = next(c for c in mp.module.relations.cols if c)
    return Witness("minimal-relation", f"A_{level} ⊗ M has a nonzero minimal relation, so it is not free",
                   col, mp.module.rank, M.base, level=level)


def _tor_witness(H, i: int, what: str, level: Optional[int] = None) -> Witness:
    g = H.nonzero_generators()[0]
    return Witness("tor-class", what, g, H.ambient.rank, H.ambient.base, level=level, degree=-i,
                   extra={"tor_index": i, "dimension": H.module.vector_space_dim()})


def _tor_vanishing(N: FPModule, M: FPModule, depth: int, P: FreeResolution, what: str, level=None):
    """Return (status, witness) for ``Tor_i(N, M) = 0``, ``1 <= i <= depth``."""
    for i in range(1, depth + 1):
        if not P.covers(i):
            return UNDETERMINED, None
        H = tor_classes(N, M, i, P)
        if not H.is_zero():
            return FAIL, _tor_witness(H, i, f"{what}: Tor_{i} is nonzero", level)
    return PASS, None


@dataclass
class FlatnessVerdict:
    """Joint result of the three conditions; ``overall`` carries the combined status."""

    overall: Verdict
    conditions: Dict[str, Verdict]
    weak_condition: Optional[bool]

    @property
    def status(self) -> str:
        return self.overall.status

    @property
    def passed(self) -> bool:
        return self.overall.passed

    @property
    def failed(self) -> bool:
        return self.overall.failed

    def to_dict(self) -> dict:
        d = self.overall.to_dict()
        d["conditions"] = {k: v.to_dict() for k, v in self.conditions.items()}
        d["weak_condition"] = self.weak_condition
        return d


def _level_flatness(M_k: FPModule, k: int):
    flat, _ = is_flat_over_ring(M_k)
    if flat is None:
        return UNDETERMINED, None
    if not flat:
        return FAIL, _flatness_witness(M_k, k)
    return PASS, None


def adic_flat_check(M: FPModule, ideal: Ideal, depth: int = DEFAULT_DEPTH, kmax: int = DEFAULT_KMAX,
                    torsion_tests: Optional[Sequence[FPModule]] = None) -> FlatnessVerdict:
    """Evaluate condition (iii) up to ``depth``, (ii) for ``k <= kmax`` and (i) on a test set.

    Flatness over ``A_k`` is decided through minimal presentations (flat = free)
    and reported undetermined when neither the local-artinian nor the graded
    route applies.
    """
    if torsion_tests is None:
        torsion_tests = default_torsion_tests(ideal)
    for idx, N in enumerate(torsion_tests):
        if is_torsion_module(N, ideal) is not True:
            raise ValueError(f"torsion test {idx} is not an a-torsion module")
    A = ideal.ring
    bounds = {"depth": depth, "kmax": kmax}
    P = free_resolution(M, depth + 1)

    def ak(k):
        return FPModule.cyclic(A, ideal.power(k + 1).gens)

    # (iii)
    s_tor, w_tor = _tor_vanishing(ak(0), M, depth, P, "A_0 ⊗ M", 0)
    M0 = M.base_change(adic_quotient(ideal, 0))
    s_flat, w_flat = _level_flatness(M0, 0)
    wit = [w for w in (w_tor, w_flat) if w is not None]
    st = FAIL if FAIL in (s_tor, s_flat) else UNDETERMINED if UNDETERMINED in (s_tor, s_flat) else PASS
    cond_iii = Verdict("condition-iii", st,
                       {PASS: f"Tor_i(A_0, M) = 0 for 0 < i <= {depth} and A_0 ⊗ M is flat",
                        FAIL: "condition (iii) fails", UNDETERMINED: "condition (iii) undetermined"}[st],
                       wit, {"tor": s_tor, "flat": s_flat}, dict(bounds))

    # (ii)
    per_level = {}
    wit2: List[Witness] = []
    failing = []
    und = False
    for k in range(kmax + 1):
        s1, w1 = _tor_vanishing(ak(k), M, depth, P, f"A_{k} ⊗ M", k)
        s2, w2 = _level_flatness(M.base_change(adic_quotient(ideal, k)), k)
        per_level[k] = {"tor": s1, "flat": s2}
        wit2.extend(w for w in (w1, w2) if w is not None)
        if FAIL in (s1, s2):
            failing.append(k)
        elif UNDETERMINED in (s1, s2):
            und = True
    st2 = FAIL if failing else UNDETERMINED if und else PASS
    cond_ii = Verdict("condition-ii", st2,
                      f"fails at levels {failing}" if failing else
                      ("undetermined at some level" if und else f"holds for k <= {kmax}"),
                      wit2, {"levels": per_level, "failing_levels": failing}, dict(bounds),
                      failing[0] if failing else None)

    # (i) on the test set
    per_test = {}
    wit1: List[Witness] = []
    und1 = False
    for idx, N in enumerate(torsion_tests):
        s, w = _tor_vanishing(N, M, depth, P, f"torsion test {idx}")
        per_test[idx] = s
        if w is not None:
            w.extra["test"] = idx
            wit1.append(w)
        und1 = und1 or s == UNDETERMINED
    st1 = FAIL if wit1 else UNDETERMINED if und1 else PASS
    cond_i = Verdict("condition-i", st1,
                     "Tor vanishing fails on the test set" if wit1 else
                     ("undetermined on the test set" if und1 else
                      f"holds on the {len(torsion_tests)} supplied torsion modules"),
                     wit1, {"tests": per_test}, dict(bounds))

    conditions = {"i": cond_i, "ii": cond_ii, "iii": cond_iii}
    # weaker condition: Tor_1(A_0, M) = 0 and A_0 ⊗ M flat
    weak = None
    if s_flat != UNDETERMINED:
        t1 = tor_classes(ak(0), M, 1, P).is_zero() if P.covers(1) else None
        weak = None if t1 is None else (t1 and s_flat == PASS)
    statuses = [c.status for c in conditions.values()]
    witnesses = [w for c in conditions.values() for w in c.witnesses]
    details = {name: c.status for name, c in conditions.items()}
    details["weak_condition"] = weak
    details["divergence_from_weak_condition"] = bool(weak) and cond_iii.status == FAIL
    if FAIL in statuses:
        overall = Verdict("flatcheck", FAIL, "not adically flat (certified)", witnesses, details, bounds)
    elif UNDETERMINED in statuses:
        overall = Verdict("flatcheck", UNDETERMINED, "undetermined within bounds", witnesses, details, bounds)
    else:
        overall = Verdict("flatcheck", PASS, f"adically flat up to (depth {depth}, kmax {kmax})", [], details, bounds)
    return FlatnessVerdict(overall, conditions, weak)


# ---------------------------------------------------------------- completion of resolutions


def _kernel_tower_ml(ideal: Ideal, kmax: int, src_rank: int, target: AdicTower, d: Matrix) -> Verdict:
    S = induced_tower(FPModule.free(ideal.ring, src_rank), ideal, kmax)
    phi = TowerMorphism(S, target, [d] * (kmax + 1))
    return ml_kernel_tower_check(S, target, phi, require_surjective=False)


def check_tensored_resolution_tower(M: FPModule, ideal: Ideal, kmax: int = DEFAULT_KMAX, depth: int = DEFAULT_DEPTH,
                   check_precondition: bool = True) -> Verdict:
    """Exactness of ``A_k ⊗ P -> A_k ⊗ M`` for ``k <= kmax`` and ML of the kernel towers."""
    A = ideal.ring
    bounds = {"kmax": kmax, "depth": depth}
    pre = None
    if check_precondition:
        pre = adic_flat_check(M, ideal, depth, kmax)
    P = free_resolution(M, depth + 1)
    witnesses: List[Witness] = []
    levels = {}
    for k in range(kmax + 1):
        Ak = adic_quotient(ideal, k)
        Pk = P.complex.base_change(Ak)
        ok = True
        top = P.length if P.complete else P.length - 1
        for i in range(1, min(depth, top) + 1):
            H = Pk.homology_submodule(-i)
            nz = H.nonzero_generators()
            if nz:
                witnesses.append(Witness("homology-class", f"A_{k} ⊗ P is not exact at degree {-i}",
                                         nz[0], Pk.rank(-i), A.base, level=k, degree=-i))
                ok = False
                break
        eta = ModuleMap(Pk.boundary_ambient(0), M.base_change(Ak), P.augmentation, check=False)
        if ok and not eta.is_isomorphism():
            vec = eta.kernel_witness() or eta.cokernel_witness()
            witnesses.append(Witness("augmentation", f"H^0(A_{k} ⊗ P) -> A_{k} ⊗ M not bijective", vec,
                                     Pk.rank(0), A.base, level=k, degree=0))
            ok = False
        levels[k] = PASS if ok else FAIL
    # kernel towers: ker(A_k ⊗ P^{-j} -> A_k ⊗ P^{-j+1}) and ker(A_k ⊗ P^0 -> A_k ⊗ M)
    ml = {}
    targets = [(0, induced_tower(M, ideal, kmax), P.augmentation)]
    for j in range(1, P.length + 1):
        targets.append((j, induced_tower(FPModule.free(A, P.complex.rank(-j + 1)), ideal, kmax), P.differential(j)))
    for j, tgt, d in targets:
        v = _kernel_tower_ml(ideal, kmax, P.complex.rank(-j), tgt, d)
        ml[-j] = v.status
        if not v.passed:
            for w in v.witnesses:
                w.degree = -j
            witnesses.extend(v.witnesses)
    details = {"levels": levels, "kernel_towers_ml": ml, "resolution_ranks": P.ranks()}
    if pre is not None:
        details["precondition"] = pre.status
    exact = all(s == PASS for s in levels.values()) and all(s == PASS for s in ml.values())
    if pre is not None and pre.status == FAIL:
        return Verdict("prop250", FAIL, "precondition fails: M is not adically flat", pre.overall.witnesses + witnesses,
                       details, bounds)
    if not exact:
        return Verdict("prop250", FAIL, "tensored resolution tower is not exact or not Mittag-Leffler", witnesses,
                       details, bounds, next((k for k, s in levels.items() if s != PASS), None))
    if pre is not None and pre.status == UNDETERMINED:
        return Verdict("prop250", UNDETERMINED, "exact, but the flatness precondition is undetermined", [], details, bounds)
    return Verdict("prop250", PASS, f"A_k ⊗ P resolves A_k ⊗ M for k <= {kmax}; kernel towers Mittag-Leffler",
                   details=details, bounds=bounds)


def annihilating_level(N: FPModule, ideal: Ideal, kmax: int) -> Optional[int]:
    """Least ``k <= kmax`` with ``a^{k+1} N = 0``."""
    for k in range(kmax + 1):
        gens = ideal.power(k + 1).gens
        if all(N.is_zero_element(poly_to_vec(g, i)) for g in gens for i in range(N.rank)):
            return k
    return None


def check_flat_tower_limit(T: AdicTower, SR: SystemResolution, torsion_tests: Sequence[FPModule],
                           depth: int = DEFAULT_DEPTH) -> Verdict:
    """``H^{-i}(N ⊗_{A_k} P_k) = 0`` for every test ``N`` at its annihilating level ``k``."""
    bounds = {"kmax": T.kmax, "depth": depth}
    for k, M_k in enumerate(T.modules):
        s, w = _level_flatness(M_k, k)
        if s == FAIL:
            return Verdict("limit-flat", FAIL, f"level {k} is not flat over A_{k}", [w], {}, bounds, k)
        if s == UNDETERMINED:
            return Verdict("limit-flat", UNDETERMINED, f"flatness of level {k} undetermined", [], {}, bounds)
    if not SR.succeeded:
        return Verdict("limit-flat", SR.verdict.status, "no system resolution: " + SR.verdict.summary,
                       SR.verdict.witnesses, {}, bounds, SR.verdict.failing_level)
    per_test = {}
    for idx, N in enumerate(torsion_tests):
        k = annihilating_level(N, T.ideal, T.kmax)
        if k is None:
            return Verdict("limit-flat", UNDETERMINED, f"test {idx} is not killed by a^{{k+1}} for k <= {T.kmax}",
                           [], {"tests": per_test}, bounds)
        Pk = SR.resolutions[k]
        C = tensor_module_complex(N.base_change(T.rings[k]), Pk.complex)
        vanish = []
        for i in range(1, depth + 1):
            if not Pk.covers(i):
                return Verdict("limit-flat", UNDETERMINED, f"resolution too short for degree {-i}", [],
                               {"tests": per_test}, bounds)
            H = C.homology_submodule(-i)
            nz = H.nonzero_generators()
            if nz:
                w = Witness("homology-class", f"H^{-i}(N ⊗ P_{k}) is nonzero for test {idx}", nz[0], C.rank(-i),
                            T.ideal.ring.base, level=k, degree=-i, extra={"test": idx})
                return Verdict("limit-flat", FAIL, f"test {idx} has nonzero homology at degree {-i}", [w],
                               {"tests": per_test}, bounds, k)
            vanish.append(-i)
        per_test[idx] = {"level": k, "vanishing_degrees": vanish}
    return Verdict("limit-flat", PASS, f"H^-i(N ⊗ P_k) = 0 for 0 < i <= {depth} on every test",
                   details={"tests": per_test}, bounds=bounds)
