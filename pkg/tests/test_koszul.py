import pytest

from adic.algebra import AlgebraError
from adic.koszul import KoszulTower, bidual, dual_complex, dual_koszul, dual_transition, koszul_complex, local_cohomology_approx
from adic.modules import FPModule, Matrix, ModuleMap, QuotientRing


def test_differential_signs(Rxy):
    K = koszul_complex(Rxy, ["x", "y"], 1)
    d2 = K.differential(-2)
    # d(e_{01}) = a_0 e_1 - a_1 e_0 in the lexicographic basis e_0, e_1
    assert d2.cols[0] == {(0, (0, 1)): -1, (1, (1, 0)): 1}


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_regular_sequence_has_no_higher_homology(Rxy, k):
    T = KoszulTower(Rxy, ["x", "y"], 4)
    assert T.homology(1, k).is_zero()
    assert T.homology(2, k).is_zero()
    H0 = T.complex(k).boundary_ambient(0)
    target = FPModule.cyclic(Rxy, [Rxy("x") ** k, Rxy("y") ** k])
    assert ModuleMap(H0, target, Matrix.identity(Rxy, 1)).is_isomorphism()
    assert H0.vector_space_dim() == k * k


def test_transitions_compose(Rxy):
    T = KoszulTower(Rxy, ["x", "y"], 4)
    left = T.transition(3, 1).compose(T.transition(4, 3))
    right = T.transition(4, 1)
    assert all(left.component(i) == right.component(i) for i in range(-2, 1))
    with pytest.raises(AlgebraError):
        T.transition(1, 2)


def test_zero_divisor_tower(Rxy):
    A = QuotientRing(Rxy, ["x*y"])
    T = KoszulTower(A, ["x"], 3)
    H = T.homology(1, 2)
    assert H.contains({(0, (0, 1)): 1})
    assert T.transition(2, 1).induced_is_zero(-1)
    assert not T.transition(1, 1).induced_is_zero(-1)


def test_dual_koszul_is_transpose(Rxy):
    K = koszul_complex(Rxy, ["x", "y"], 2)
    D = dual_koszul(Rxy, ["x", "y"], 2)
    assert D.ranks() == {0: 1, 1: 2, 2: 1}
    assert D.differential(0) == K.differential(-1).transpose()
    B = bidual(K)
    assert B.ranks() == K.ranks()
    assert all(B.differential(i) == K.differential(i) for i in (-2, -1))
    assert dual_complex(K).ranks() == D.ranks()


def test_dual_transition_direction(Rxy):
    phi = dual_transition(Rxy, ["x", "y"], 1, 3)
    assert phi.source.differential(0) == dual_koszul(Rxy, ["x", "y"], 1).differential(0)
    with pytest.raises(AlgebraError):
        dual_transition(Rxy, ["x", "y"], 3, 1)


def test_local_cohomology_of_torsion_part(Rxy):
    M = FPModule.cyclic(Rxy, ["x^2", "x*y"])
    H = local_cohomology_approx(M, ["x", "y"], 2, 0)
    assert H.dimension == 1
    assert H.stabilized
    free = local_cohomology_approx(FPModule.free(Rxy, 1), ["x", "y"], 2, 0)
    assert free.is_zero
