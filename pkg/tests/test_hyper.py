import pytest
from hypothesis import given, strategies as st

from affschur.core import PeriodicMatrix
from affschur.hyper import (BASES, HyperElement, convert, divided_power_check, element,
                            evaluate_xi, h_binomial, hall_by_evaluation, hall_mul, transpose, unit)

from strategies import offdiag_matrices

E12 = PeriodicMatrix.E(2, 1, 2)
E21 = PeriodicMatrix.E(2, 2, 1)
lams = st.tuples(st.integers(0, 2), st.integers(0, 2))


def test_classical_commutator():
    e, f = element(E12), element(E21)
    assert e * f - f * e == h_binomial((1, 0)) - h_binomial((0, 1))


def test_unit():
    x = element(PeriodicMatrix(2, [(1, 4, 1)]), (1, 0))
    assert unit(2) * x == x == x * unit(2)


def test_h_binomial_square():
    # H(H-1)/2 * 2 + H = H^2
    h = h_binomial((1, 0))
    assert h * h == h_binomial((2, 0)).scale(2) + h


@given(offdiag_matrices(window=2, max_sigma=3), lams, st.sampled_from(BASES))
def test_conversion_round_trip(A, lam, tag):
    x = element(A, lam)
    y = convert(x, "B", tag)
    assert convert(y, tag, "B") == x


@given(offdiag_matrices(window=2, max_sigma=2), lams, offdiag_matrices(window=2, max_sigma=2), lams)
def test_transpose_anti(A, lam, B, mu):
    x, y = element(A, lam), element(B, mu)
    assert transpose(x * y) == transpose(y) * transpose(x)


@given(offdiag_matrices(window=2, max_sigma=2), lams, offdiag_matrices(window=2, max_sigma=2), lams,
       st.integers(1, 3))
def test_evaluation_is_homomorphism(A, lam, B, mu, r):
    x, y = element(A, lam), element(B, mu)
    assert evaluate_xi(x * y, r) == evaluate_xi(x, r) * evaluate_xi(y, r)


@given(offdiag_matrices(window=2, max_sigma=3, sign=1), offdiag_matrices(window=2, max_sigma=2, sign=1))
def test_hall_matches_evaluation(A, B):
    assert hall_mul(A, B) == hall_by_evaluation(A, B)


def test_hall_rejects_lower():
    with pytest.raises(ValueError):
        hall_mul(E21, E12)


@pytest.mark.parametrize("i,j,k", [(1, 2, 2), (2, 1, 3), (1, 4, 2), (2, 5, 2)])
def test_divided_powers(i, j, k):
    assert divided_power_check(i, j, k, 2)


def test_index_validation():
    with pytest.raises(ValueError):
        HyperElement({(PeriodicMatrix.diagonal((1, 0)), (0, 0)): 1}, n=2)
