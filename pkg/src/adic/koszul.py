"""Koszul complexes on powers of a sequence, their transitions and duals."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import AlgebraError
from .complexes import ChainComplex, ComplexMap, tensor_module_complex
from .modules import FPModule, Matrix, ModuleMap, QuotientRing, Submodule, as_quotient, poly_to_vec


def _subsets(n: int, p: int) -> List[Tuple[int, ...]]:
    return list(itertools.combinations(range(n), p))


def _sequence(ring: QuotientRing, a) -> list:
    seq = [ring.base(g) for g in a]
    if not seq:
        raise AlgebraError("the sequence must be nonempty")
    return seq


def koszul_complex(ring, a: Sequence, k: int) -> ChainComplex:
    """``K(A; a_1^k, ..., a_n^k)`` in degrees ``-n..0``.

    The degree ``-p`` basis is the p-subsets of ``{0..n-1}`` in lexicographic
    order, and ``d(e_S) = sum_j (-1)^j a_{s_j}^k e_{S - s_j}`` (``j`` counted from 0).
    """
    if k < 1:
        raise AlgebraError("Koszul level must be at least 1")
    R = as_quotient(ring)
    seq = _sequence(R, a)
    n = len(seq)
    powers = [g ** k for g in seq]
    base = R.base
    ranks = {-p: len(_subsets(n, p)) for p in range(n + 1)}
    diffs: Dict[int, Matrix] = {}
    for p in range(1, n + 1):
        tgt_index = {S: i for i, S in enumerate(_subsets(n, p - 1))}
        cols = []
        for S in _subsets(n, p):
            col = {}
            for j, s in enumerate(S):
                rest = S[:j] + S[j + 1 :]
                entry = R.reduce(powers[s] if j % 2 == 0 else -powers[s])
                col.update(poly_to_vec(entry, tgt_index[rest]))
            cols.append(col)
        diffs[-p] = Matrix(base, ranks[-p + 1], cols)
    return ChainComplex.free(R, ranks, diffs)


def _transition_matrices(R: QuotientRing, seq, n: int, e: int) -> Dict[int, Matrix]:
    base = R.base
    out = {}
    for p in range(n + 1):
        subs = _subsets(n, p)
        cols = []
        for i, S in enumerate(subs):
            c = base.one()
            for s in S:
                c = c * seq[s] ** e
            cols.append(poly_to_vec(R.reduce(c), i))
        out[-p] = Matrix(base, len(subs), cols)
    return out


class KoszulTower:
    """The inverse system ``K(A; a^1) <- K(A; a^2) <- ... <- K(A; a^KMAX)``."""

    def __init__(self, ring, a: Sequence, kmax: int):
        if kmax < 1:
            raise AlgebraError("kmax must be at least 1")
        self.ring = as_quotient(ring)
        self.sequence = _sequence(self.ring, a)
        self.kmax = kmax
        self.n = len(self.sequence)
        self._complexes: Dict[int, ChainComplex] = {}
        self._transitions: Dict[Tuple[int, int], ComplexMap] = {}

    def complex(self, k: int) -> ChainComplex:
        if not 1 <= k <= self.kmax:
            raise AlgebraError(f"level {k} outside 1..{self.kmax}")
        if k not in self._complexes:
            self._complexes[k] = koszul_complex(self.ring, self.sequence, k)
        return self._complexes[k]

    def transition(self, k_from: int, k_to: int) -> ComplexMap:
        """``t_{k', k} : K(a^{k'}) -> K(a^k)`` for ``k' >= k``."""
        if k_from < k_to:
            raise AlgebraError("transitions go from higher to lower level")
        key = (k_from, k_to)
        if key not in self._transitions:
            maps = _transition_matrices(self.ring, self.sequence, self.n, k_from - k_to)
            self._transitions[key] = ComplexMap(self.complex(k_from), self.complex(k_to), maps)
        return self._transitions[key]

    def homology(self, i: int, k: int) -> Submodule:
        """``H^{-i}`` of level ``k`` as a subquotient (cycles over boundaries)."""
        return self.complex(k).homology_submodule(-i)


def koszul_transition(tower: KoszulTower, k_from: int, k_to: int) -> ComplexMap:
    return tower.transition(k_from, k_to)


def dual_koszul(ring, a: Sequence, k: int) -> ChainComplex:
    """``Hom(K(A; a^k), A)`` in degrees ``0..n``; ``d^p`` is the transpose of ``d^{-p-1}``."""
    K = koszul_complex(ring, a, k)
    n = -K.lo
    ranks = {p: K.rank(-p) for p in range(n + 1)}
    diffs = {p: K.differential(-p - 1).transpose() for p in range(n)}
    return ChainComplex.free(K.ring, ranks, diffs)


def dual_transition(ring, a: Sequence, k: int, k_to: int) -> ComplexMap:
    """Direct-system map ``K^∨(a^k) -> K^∨(a^{k_to})`` (``k_to >= k``), dual to ``t_{k_to, k}``."""
    if k_to < k:
        raise AlgebraError("direct-system maps go up in level")
    R = as_quotient(ring)
    seq = _sequence(R, a)
    n = len(seq)
    mats = _transition_matrices(R, seq, n, k_to - k)
    maps = {p: mats[-p].transpose() for p in range(n + 1)}
    return ComplexMap(dual_koszul(R, seq, k), dual_koszul(R, seq, k_to), maps)


def dual_complex(C: ChainComplex) -> ChainComplex:
    """``Hom(C, A)`` for a free complex: degree ``j`` holds the dual of ``C^{-j}``."""
    ranks = {-i: C.rank(i) for i in range(C.lo, C.hi + 1)}
    diffs = {-i - 1: C.differential(i).transpose() for i in range(C.lo, C.hi)}
    return ChainComplex.free(C.ring, ranks, diffs)


def bidual(C: ChainComplex) -> ChainComplex:
    """Double dual; for a free complex it coincides with ``C`` on the nose."""
    return dual_complex(dual_complex(C))


@dataclass
class LocalCohomologyApprox:
    """``H^i(K^∨(A; a^k) ⊗ M)`` together with the comparison map to level ``k+1``."""

    level: int
    degree: int
    homology: Submodule
    comparison: ModuleMap
    dimension: Optional[int]
    next_dimension: Optional[int]

    @property
    def module(self) -> FPModule:
        return self.homology.module

    @property
    def is_zero(self) -> bool:
        return self.homology.is_zero()

    @property
    def stabilized(self) -> bool:
        """True when the comparison map to the next level is an isomorphism."""
        return self.comparison.is_isomorphism()


def _dim(S: Submodule) -> Optional[int]:
    return 0 if S.is_zero() else S.module.vector_space_dim()


def local_cohomology_approx(M: FPModule, a: Sequence, k: int, i: int) -> LocalCohomologyApprox:
    R = M.ring
    seq = _sequence(R, a)
    C = tensor_module_complex(M, dual_koszul(R, seq, k))
    D = tensor_module_complex(M, dual_koszul(R, seq, k + 1))
    t = dual_transition(R, seq, k, k + 1)
    maps = {p: t.component(p).kron_identity(M.rank) for p in t.maps}
    phi = ComplexMap(C, D, maps)
    H = C.homology_submodule(i)
    comp = phi.homology_map(i)
    return LocalCohomologyApprox(k, i, H, comp, _dim(H), _dim(D.homology_submodule(i)))
