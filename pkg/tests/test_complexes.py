import pytest

from adic.algebra import AlgebraError
from adic.complexes import (
    ChainComplex, ComplexMap, dimension_vector, euler_characteristic_ranks, homology_at, shift_complex,
    tensor_complexes, tensor_module_complex,
)
from adic.koszul import koszul_complex
from adic.modules import FPModule, Matrix, QuotientRing, poly_to_vec


def col(ring, *entries):
    v = {}
    for q, e in enumerate(entries):
        v.update(poly_to_vec(ring(e), q))
    return v


def test_d_squared_nonzero_is_rejected(Rx):
    d1 = Matrix(Rx, 1, [col(Rx, "x")])
    with pytest.raises(AlgebraError):
        ChainComplex.free(Rx, {-2: 1, -1: 1, 0: 1}, {-2: d1, -1: d1})


def test_homology_of_multiplication_by_x(Rx):
    C = ChainComplex.free(Rx, {-1: 1, 0: 1}, {-1: Matrix(Rx, 1, [col(Rx, "x")])})
    assert C.homology_is_zero(-1)
    assert homology_at(C, 0).vector_space_dim() == 1


def test_homology_over_quotient_ring(Rx):
    A = QuotientRing(Rx, ["x^2"])
    C = ChainComplex.free(A, {-1: 1, 0: 1}, {-1: Matrix(Rx, 1, [col(Rx, "x")])})
    H = C.homology_submodule(-1)
    assert not H.is_zero()
    assert H.module.vector_space_dim() == 1


def test_tensor_of_koszul_complexes_is_koszul(Rxy):
    Kx = koszul_complex(Rxy, ["x"], 1)
    Ky = koszul_complex(Rxy, ["y"], 1)
    T = tensor_complexes(Kx, Ky)
    assert T.ranks() == {-2: 1, -1: 2, 0: 1}
    assert dimension_vector(T) == {-2: 0, -1: 0, 0: 1}


def test_residue_field_tensor_koszul(Rxy):
    Q = FPModule.cyclic(Rxy, ["x", "y"])
    C = tensor_module_complex(Q, koszul_complex(Rxy, ["x", "y"], 1))
    assert dimension_vector(C) == {-2: 1, -1: 2, 0: 1}


def test_euler_characteristic_and_shift(Rxy):
    K = koszul_complex(Rxy, ["x", "y"], 2)
    assert euler_characteristic_ranks(K) == 0
    S = shift_complex(K, 1)
    assert S.rank(-3) == 1 and S.rank(-1) == 1


def test_chain_map_must_commute(Rx):
    C = ChainComplex.free(Rx, {-1: 1, 0: 1}, {-1: Matrix(Rx, 1, [col(Rx, "x")])})
    bad = {-1: Matrix.identity(Rx, 1), 0: Matrix(Rx, 1, [col(Rx, "2")])}
    with pytest.raises(AlgebraError):
        ComplexMap(C, C, bad)


def test_homology_map_of_identity_is_identity(Rx):
    A = QuotientRing(Rx, ["x^2"])
    C = ChainComplex.free(A, {-1: 1, 0: 1}, {-1: Matrix(Rx, 1, [col(Rx, "x")])})
    ident = ComplexMap(C, C, {i: Matrix.identity(Rx, 1) for i in (-1, 0)})
    assert ident.homology_map(-1).is_isomorphism()
    assert not ident.induced_is_zero(-1)
    zero = ComplexMap(C, C, {i: Matrix.zeros(Rx, 1, 1) for i in (-1, 0)})
    assert zero.induced_is_zero(-1)
