import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from ssetkit.snf import IntMatrix, invariant_factors, is_smith_normal_form, smith_normal_form


def sympy_factors(M: IntMatrix) -> list[int]:
    if M.rows == 0 or M.cols == 0:
        return []
    D = sympy_snf(sympy.Matrix(M.entries), domain=sympy.ZZ)
    return sorted(abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0)


matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-12, 12), min_size=n, max_size=n), min_size=m, max_size=m
        ).map(IntMatrix.from_rows)
    )
)


@settings(max_examples=200)
@given(matrices)
def test_snf_transforms_and_shape(M):
    D, U, V = smith_normal_form(M)
    assert U @ M @ V == D
    assert abs(U.det()) == 1 and abs(V.det()) == 1
    assert is_smith_normal_form(D)


@settings(max_examples=200)
@given(matrices)
def test_invariant_factors_match_sympy(M):
    assert sorted(invariant_factors(M)) == sympy_factors(M)


@settings(max_examples=100)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(
    st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_sympy(rows):
    assert IntMatrix.from_rows(rows).det() == sympy.Matrix(rows).det()


def test_known_example():
    M = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    D, _, _ = smith_normal_form(M)
    assert D.diagonal() == [2, 6, 12]


def test_empty_and_zero_matrices():
    for M in (IntMatrix.zeros(0, 3), IntMatrix.zeros(3, 0), IntMatrix.zeros(2, 2)):
        D, U, V = smith_normal_form(M)
        assert D.is_zero() and U @ M @ V == D
    assert IntMatrix.zeros(0, 0).det() == 1
    assert IntMatrix.zeros(3, 0).transpose().rows == 0


def test_shape_checks():
    with pytest.raises(ValueError):
        IntMatrix(2, 2, ((1, 2),))
    with pytest.raises(ValueError):
        IntMatrix.identity(2) @ IntMatrix.identity(3)
    with pytest.raises(ValueError):
        IntMatrix.zeros(2, 3).det()


def test_is_smith_normal_form_rejects():
    assert not is_smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert not is_smith_normal_form(IntMatrix.from_rows([[0, 0], [0, 1]]))
    assert not is_smith_normal_form(IntMatrix.from_rows([[1, 1], [0, 1]]))
    assert not is_smith_normal_form(IntMatrix.from_rows([[-1]]))
