import pytest

from adic.modules import FPModule, Ideal, QuotientRing
from adic.resolutions import (
    check_base_change_compatibility, first_nonzero_tor, free_resolution, levelwise_tor_obstructions, lift_resolution,
    system_resolution, tor_dimension,
)
from adic.towers import induced_tower


def test_koszul_resolution_of_residue_field(Rxy):
    Q = FPModule.cyclic(Rxy, ["x", "y"])
    P = free_resolution(Q, 4)
    assert P.ranks() == [1, 2, 1]
    assert P.complete
    assert P.verify().passed


def test_periodic_resolution_over_dual_numbers(Rx):
    A = QuotientRing(Rx, ["x^2"])
    P = free_resolution(FPModule.cyclic(A, ["x"]), 4)
    assert P.ranks() == [1] * 5
    assert not P.complete
    assert P.verify().passed
    assert not P.covers(4) and P.covers(3)


def test_tor_both_sides(Rxy):
    Q = FPModule.cyclic(Rxy, ["x", "y"])
    M = FPModule.cyclic(Rxy, ["x"])
    assert [tor_dimension(Q, M, i) for i in range(3)] == [1, 1, 0]
    assert [tor_dimension(M, Q, i) for i in range(3)] == [1, 1, 0]


def test_first_nonzero_tor(Rxy):
    Q = FPModule.cyclic(Rxy, ["x", "y"])
    i, H = first_nonzero_tor(Q, FPModule.cyclic(Rxy, ["x"]), 3)
    assert i == 1
    assert first_nonzero_tor(Q, FPModule.free(Rxy, 2), 3) is None


@pytest.mark.parametrize("module", ["free3", "mixed"])
def test_system_resolution_and_base_change(Rxy, module):
    if module == "free3":
        M, a = FPModule.free(Rxy, 3), Ideal(Rxy, ["x", "y"])
    else:
        M, a = FPModule.cyclic(Rxy, ["x"]).direct_sum(FPModule.free(Rxy, 1)), Ideal(Rxy, ["y"])
    SR = system_resolution(induced_tower(M, a, 3), 3)
    assert SR.succeeded
    assert check_base_change_compatibility(SR).passed
    assert levelwise_tor_obstructions(SR.tower, 2) == []


def test_obstructed_lift_reports_tor(Rx):
    a = Ideal(Rx, ["x"])
    T = induced_tower(FPModule.cyclic(Rx, ["x"]), a, 2)
    res0 = free_resolution(T.modules[0], 3)
    out = lift_resolution(res0, T.modules[1], T.transitions[0], 3)
    assert out.resolution is None
    w = out.verdict.witnesses[0]
    assert w.kind == "tor-class" and w.extra["dimension"] == 1
    assert levelwise_tor_obstructions(T, 2)[0][:2] == (0, 1)
