import pytest

from adic.flatness import (
    adic_flat_check, annihilating_level, check_flat_tower_limit, check_tensored_resolution_tower, default_torsion_tests,
)
from adic.modules import FPModule, Ideal, QuotientRing
from adic.resolutions import system_resolution
from adic.towers import induced_tower


def test_free_module_is_adically_flat(Rxy, max_ideal):
    v = adic_flat_check(FPModule.free(Rxy, 2), max_ideal, depth=3, kmax=3)
    assert v.passed
    assert v.weak_condition is True


def test_equivalent_conditions_fail_together(Rxy, max_ideal):
    v = adic_flat_check(FPModule.cyclic(Rxy, ["x", "y"]), max_ideal, depth=3, kmax=2)
    assert {c: r.status for c, r in v.conditions.items()} == {"i": "fail", "ii": "fail", "iii": "fail"}
    assert v.overall.details["divergence_from_weak_condition"] is False


def test_tor_vanishing_alone_is_not_enough(Rxy):
    # for a = (y) the sequence x, y is regular so Tor_i(A_0, A/(x)) = 0, but A_0 ⊗ A/(x) = Q[x]/(x) is not flat over Q[x]
    v = adic_flat_check(FPModule.cyclic(Rxy, ["x"]), Ideal(Rxy, ["y"]), depth=3, kmax=2)
    iii = v.conditions["iii"]
    assert iii.details == {"tor": "pass", "flat": "fail"}
    assert iii.witnesses[0].kind == "minimal-relation"
    assert v.failed


def test_adically_flat_module_that_is_not_flat(Rxy, max_ideal):
    # x - 1 is a unit on every a-torsion module, so A/(x - 1) is adically flat without being flat
    v = adic_flat_check(FPModule.cyclic(Rxy, ["x - 1"]), max_ideal, depth=3, kmax=2)
    assert v.passed


def test_non_torsion_test_module_is_rejected(Rxy, max_ideal):
    with pytest.raises(ValueError):
        adic_flat_check(FPModule.free(Rxy, 1), max_ideal, torsion_tests=[FPModule.cyclic(Rxy, ["x"])])


def test_undetermined_flatness_outside_local_case(Rxy):
    A = QuotientRing(Rxy, ["x^2 - 1"])
    v = adic_flat_check(FPModule.cyclic(A, ["x - 1"]), Ideal(A, ["x - 1"]), depth=2, kmax=1)
    assert v.status in ("undetermined", "fail")
    assert v.conditions["iii"].status != "pass"


def test_default_tests_are_torsion(max_ideal):
    tests = default_torsion_tests(max_ideal)
    assert [annihilating_level(N, max_ideal, 4) for N in tests] == [0, 1, 1, 1]


def test_tensored_resolution_tower_for_free_and_quotient(Rxy, max_ideal):
    assert check_tensored_resolution_tower(FPModule.free(Rxy, 1), max_ideal, kmax=2, depth=2).passed
    bad = check_tensored_resolution_tower(FPModule.cyclic(Rxy, ["x"]), max_ideal, kmax=2, depth=2, check_precondition=False)
    assert bad.failed
    assert bad.witnesses[0].kind == "homology-class"


def test_limit_flatness_on_induced_free_tower(Rxy, max_ideal):
    T = induced_tower(FPModule.free(Rxy, 1), max_ideal, 2)
    SR = system_resolution(T, 3)
    assert check_flat_tower_limit(T, SR, default_torsion_tests(max_ideal)[:2], depth=2).passed


def test_limit_flatness_rejects_nonflat_levels(Rxy, max_ideal):
    T = induced_tower(FPModule.cyclic(Rxy, ["x"]), max_ideal, 2)
    v = check_flat_tower_limit(T, system_resolution(T, 3), default_torsion_tests(max_ideal), depth=2)
    assert v.failed and v.failing_level == 1
