from fractions import Fraction

import pytest
import sympy
from sympy import GF
from sympy.polys.matrices import DomainMatrix
from hypothesis import given, settings, strategies as st

from fiax import kernels
from fiax.fields import Field, FieldError
from fiax.linalg import Inconsistent, SparseMatrix

Q, F5 = Field(0), Field(5)


def test_field_parse():
    assert Field.parse("rational") == Q
    assert Field.parse("p=5") == F5
    assert Field.parse("F_7").p == 7
    with pytest.raises(FieldError):
        Field.parse("p=6")
    with pytest.raises(FieldError):
        Field.parse("reals")


def test_field_arithmetic():
    assert F5(Fraction(1, 2)) == 3
    assert F5.inv(2) == 3
    assert Q.inv(2) == Fraction(1, 2)
    assert Q.norm(Fraction(4, 2)) == 2 and type(Q.norm(Fraction(4, 2))) is int
    with pytest.raises(FieldError):
        F5(Fraction(1, 5))
    with pytest.raises(ZeroDivisionError):
        F5.inv(0)


small = st.integers(-3, 3)


def matrices(max_n=5):
    return st.integers(1, max_n).flatmap(
        lambda r: st.integers(1, max_n).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_sympy(rows):
    M = SparseMatrix.from_dense(rows, Q)
    assert M.rank() == sympy.Matrix(rows).rank()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_mod_p_matches_sympy(rows):
    M = SparseMatrix.from_dense(rows, F5)
    dm = DomainMatrix([[GF(5)(x) for x in r] for r in rows], (len(rows), len(rows[0])), GF(5))
    assert M.rank() == dm.rank()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_is_kernel(rows):
    for fld in (Q, F5):
        M = SparseMatrix.from_dense(rows, fld)
        K = M.kernel()
        assert len(K) == M.ncols - M.rank()
        for v in K:
            assert M.apply(v) == {}


@settings(max_examples=40, deadline=None)
@given(matrices(4), st.lists(small, min_size=4, max_size=4))
def test_solve_roundtrip(rows, x):
    M = SparseMatrix.from_dense(rows, Q)
    x = {i: v for i, v in enumerate(x[:M.ncols]) if v}
    b = M.apply(x)
    y = M.solve_vec(b)
    assert M.apply(y) == b


def test_inconsistent():
    M = SparseMatrix.from_dense([[1, 0], [0, 0]], Q)
    with pytest.raises(Inconsistent):
        M.solve_vec({1: 1})


def test_inverse_and_left_solve():
    M = SparseMatrix.from_dense([[2, 1], [1, 1]], Q)
    assert M @ M.inverse() == SparseMatrix.identity(2, Q)
    B = SparseMatrix.from_dense([[1, 2], [3, 4]], Q)
    X = M.left_solve(B)
    assert X @ M == B


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled kernels not built")
@settings(max_examples=40, deadline=None)
@given(matrices(6), st.sampled_from([0, 5, 7]))
def test_backends_agree(rows, p):
    fld = Field(p)
    M = SparseMatrix.from_dense(rows, fld)
    try:
        kernels.use("python")
        ref = (M.rref(), (M @ M.T).cols)
        kernels.use("cython")
        got = (M.rref(), (M @ M.T).cols)
    finally:
        kernels.use("cython")
    assert got == ref


def test_large_prime_falls_back():
    p = 3037000507      # p*p overflows int64, so the compiled kernel must delegate
    fld = Field(p)
    M = SparseMatrix.from_dense([[p - 1, 2], [3, p - 5]], fld)
    assert M.rank() == 2
    assert M @ M.inverse() == SparseMatrix.identity(2, fld)
