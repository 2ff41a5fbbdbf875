import pytest

from adic.algebra import AlgebraError
from adic.modules import FPModule, Ideal, Matrix
from adic.towers import (
    AdicTower, TowerMorphism, check_completion_comparison, finite_support_module, identity_morphism, induced_tower,
    is_torsion_module, ml_kernel_tower_check, torsion_submodule, validate_tower,
)


def test_induced_tower_is_valid(Rxy, max_ideal):
    T = induced_tower(FPModule.cyclic(Rxy, ["x"]), max_ideal, 3)
    assert T.kmax == 3
    assert validate_tower(T).passed
    assert [M.vector_space_dim() for M in T.modules] == [1, 2, 3, 4]


def test_powers_of_x_are_not_an_adic_system(Rx):
    # M_k = A/(x^k): A_k ⊗ M_{k+1} = A/(x^{k+1}) is strictly bigger than M_k
    a = Ideal(Rx, ["x"])
    T = AdicTower(a, [FPModule.cyclic(Rx, [Rx("x") ** k]) for k in range(5)])
    v = validate_tower(T)
    assert v.failed and v.failing_level == 0
    assert v.witnesses[0].kind == "kernel-element"
    # shifting the indices by one gives the induced tower of A, which is fine
    shifted = AdicTower(a, [FPModule.cyclic(Rx, [Rx("x") ** (k + 1)]) for k in range(5)])
    assert validate_tower(shifted).passed


def test_ill_defined_transition(Rx):
    a = Ideal(Rx, ["x"])
    T = AdicTower(a, [FPModule.free(Rx, 1), FPModule.free(Rx, 1)], [Matrix.zeros(Rx, 1, 1)])
    v = validate_tower(T)
    assert v.failed and v.witnesses[0].kind == "kernel-element"
    assert v.witnesses[0].to_dict()["element"] == ["1"]


def test_tower_shape_errors(Rx):
    a = Ideal(Rx, ["x"])
    with pytest.raises(AlgebraError):
        AdicTower(a, [])
    with pytest.raises(AlgebraError):
        AdicTower(a, [FPModule.free(Rx, 1), FPModule.free(Rx, 2)])


def test_torsion_submodule(Rxy, max_ideal):
    res = torsion_submodule(FPModule.cyclic(Rxy, ["x^2", "x*y"]), max_ideal)
    assert res.level == 0
    assert res.submodule.module.vector_space_dim() == 1
    assert torsion_submodule(FPModule.free(Rxy, 1), max_ideal).submodule.is_zero()
    assert is_torsion_module(FPModule.cyclic(Rxy, ["x^3", "y^2"]), max_ideal) is True
    assert is_torsion_module(FPModule.cyclic(Rxy, ["x"]), max_ideal) is False


def test_ml_identity_passes_and_broken_morphism_fails(Rxy, max_ideal):
    T = induced_tower(FPModule.free(Rxy, 1), max_ideal, 2)
    assert ml_kernel_tower_check(T, T, identity_morphism(T)).passed
    zero = TowerMorphism(T, T, [Matrix.zeros(Rxy, 1, 1)] * 3)
    v = ml_kernel_tower_check(T, T, zero)
    assert v.failed and v.failing_level == 0
    relaxed = ml_kernel_tower_check(T, T, zero, require_surjective=False)
    assert relaxed.passed


def test_finite_support_module_map_is_iso(Rxy):
    total, phi = finite_support_module(3, FPModule.cyclic(Rxy, ["x"]))
    assert total.rank == 3
    assert phi.is_isomorphism()


@pytest.mark.parametrize("gens", [[], ["x"]])
def test_completion_comparison(Rxy, max_ideal, gens):
    M = FPModule.cyclic(Rxy, gens) if gens else FPModule.free(Rxy, 1)
    assert check_completion_comparison(M, max_ideal, 2).passed
