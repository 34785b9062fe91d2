import pytest

from fiax import bimodule as bm
from fiax.linalg import SparseMatrix

import oracle
from conftest import VALID, algebra


def frees(A):
    return [bm.free_projective(A, i, j) for i in range(A.n) for j in range(A.n)]


@pytest.mark.parametrize("name", VALID)
def test_free_projectives_valid(name):
    A = algebra(name)
    for X in frees(A) + [bm.regular(A)]:
        X.validate()
    for i in range(A.n):
        for j in range(A.n):
            assert bm.free_projective(A, i, j).dim == oracle.free_word_dim(A, [(i, j)])


@pytest.mark.parametrize("name", ["dual_numbers", "kx3", "brauer_line_n2"])
def test_hom_dims_against_dense_oracle(name):
    A = algebra(name)
    Xs = frees(A) + [bm.regular(A)]
    for X in Xs:
        for Y in Xs:
            basis = bm.hom_space(X, Y)
            assert len(basis) == oracle.hom_dim(X, Y), (X, Y)
            assert all(f.verify() for f in basis)


def test_left_module_homs():
    A = algebra("brauer_line_n2")
    for k in range(A.n):
        P = bm.regular_left(A, k)
        assert len(bm.hom_space(P, P)) == oracle.hom_dim(P, P) == 2


@pytest.mark.parametrize("name", ["dual_numbers", "brauer_line_n2"])
def test_tensor_over_A_dims(name):
    A = algebra(name)
    for X in frees(A):
        for Y in frees(A):
            T, _ = bm.tensor_over_A(X, Y)
            T.validate()
            assert T.dim == oracle.tensor_dim(X, Y)


def test_regular_is_tensor_unit():
    A = algebra("brauer_line_n2")
    R = bm.regular(A)
    for X in frees(A):
        T, _ = bm.tensor_over_A(R, X)
        assert T.dim == X.dim


def test_cokernel_and_kernel_maps():
    A = algebra("kx3")
    X = bm.free_projective(A, 0, 0)
    R = bm.regular(A)
    mult = [f for f in bm.hom_space(X, R)]
    f = mult[0]
    for g in mult[1:]:
        f = bm.BimoduleMap(X, R, f.mat + g.mat)
    Q, p = bm.cokernel_map(f)
    K, inc = bm.kernel_map(f)
    Q.validate()
    K.validate()
    assert p.verify() and inc.verify()
    r = f.mat.rank()
    assert Q.dim == R.dim - r and K.dim == X.dim - r
    assert (f.mat @ inc.mat).is_zero()
    assert (p.mat @ f.mat).is_zero()


def test_non_intertwiner_detected():
    A = algebra("dual_numbers")
    X = bm.free_projective(A, 0, 0)
    m = SparseMatrix.zero(X.dim, X.dim, A.field)
    m.cols[0] = {1: 1}
    assert not bm.BimoduleMap(X, X, m).verify()
