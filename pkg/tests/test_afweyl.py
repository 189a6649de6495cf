import pytest
from hypothesis import given

from affschur.afweyl import (AffinePermutation, double_coset, is_double_coset_rep, jmath,
                             jmath_inverse, matrix_of, oracle_mul)
from affschur.core import PeriodicMatrix, enumerate_theta

from strategies import affine_windows, theta_matrices


def test_window_validation():
    with pytest.raises(ValueError):
        AffinePermutation((1, 3))
    assert AffinePermutation((0, 3))(3) == 2


@given(affine_windows(), affine_windows(), affine_windows())
def test_group_axioms(a, b, c):
    x, y, z = (AffinePermutation(w) for w in (a, b, c))
    assert (x * y) * z == x * (y * z)
    assert x * x.inverse() == AffinePermutation.identity(3)


@given(affine_windows(r=4))
def test_periodicity(w):
    x = AffinePermutation(w)
    assert all(x(i + 4) == x(i) + 4 for i in range(-5, 5))


@given(theta_matrices(n=2, r=3))
def test_jmath_round_trip(A):
    lam, d, mu = jmath_inverse(A)
    assert is_double_coset_rep(lam, d, mu)
    assert jmath(lam, d, mu) == A


def test_matrix_constant_on_double_coset():
    A = PeriodicMatrix(2, [(1, 2, 1), (2, 3, 1)], (1, 0))
    lam, d, mu = jmath_inverse(A)
    for w in double_coset(lam, d, mu):
        assert matrix_of(lam, AffinePermutation(w) if not isinstance(w, AffinePermutation) else w, mu) == A


def test_oracle_methods_agree():
    mats = list(enumerate_theta(2, 2, 2))
    for B in mats[:15]:
        for A in mats:
            if B.co() == A.ro():
                assert oracle_mul(B, A, "convolve") == oracle_mul(B, A, "extract")


def test_oracle_identity():
    # [diag(ro A)] is a left unit for [A]
    A = PeriodicMatrix(2, [(1, 2, 1)], (1, 1))
    D = PeriodicMatrix.diagonal(A.ro())
    assert oracle_mul(D, A).terms == {A: 1}
