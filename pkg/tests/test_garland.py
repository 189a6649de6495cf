from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from affschur.core import PeriodicMatrix
from affschur.garland import (GarlandPolynomial, count_vectors, garland_monomial, lambda_by_operator,
                              lambda_poly, ladder_lhs, ladder_rhs, operator_identity_check,
                              partition_rhs, partitions, poly_from_json, poly_to_json, psi, psi_lambda)
from affschur.hyper import element

X = GarlandPolynomial.X


def test_lambda_small():
    assert lambda_poly(1) == X(1)
    assert lambda_poly(2) == (X(1) * X(1)).scale(Fraction(1, 2)) + X(2).scale(Fraction(1, 2))
    three = ((X(1) * X(1) * X(1)).scale(Fraction(1, 6)) + (X(1) * X(2)).scale(Fraction(1, 2))
             + X(3).scale(Fraction(1, 3)))
    assert lambda_poly(3) == three


@pytest.mark.parametrize("k", range(7))
def test_two_definitions_agree(k):
    assert lambda_poly(k) == lambda_by_operator(k)
    assert operator_identity_check(k, lambda_poly(k))


@pytest.mark.parametrize("k", range(1, 7))
def test_homogeneous(k):
    f = lambda_poly(k)
    assert f.is_homogeneous(k) and set(f.weights()) == {k}


def test_partition_counts():
    assert [len(list(partitions(k))) for k in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert len(count_vectors(5)) == 7


def test_psi_of_square():
    # Psi_{1,1}(X1 X1) = 2 E(1,3){0} + E(1,5){0}
    n = 2
    got = psi(1, 1, X(1) * X(1), n)
    want = element(PeriodicMatrix(n, [(1, 3, 2)])).scale(2) + element(PeriodicMatrix(n, [(1, 5, 1)]))
    assert got == want.change_ring(got.ring)


@pytest.mark.parametrize("k", range(1, 5))
@pytest.mark.parametrize("l", [1, -1, 2])
def test_partition_identity(k, l):
    lhs = psi_lambda(k, 1, l, 2)
    assert lhs == partition_rhs(k, 1, l, 2).change_ring(lhs.ring)
    assert len(lhs) == len(list(partitions(k)))


def test_ladder():
    for b in count_vectors(3):
        assert ladder_lhs(2, 1, 1, 1, b) == ladder_rhs(2, 1, 1, 1, b)


def test_monomial_example():
    A = PeriodicMatrix(2, [(1, 3, 2), (1, 2, 1)])
    want = element(PeriodicMatrix(2, [(1, 2, 1), (1, 5, 1)])) + element(PeriodicMatrix(2, [(1, 2, 1), (1, 3, 2)]))
    assert garland_monomial(A) == want


@given(st.integers(0, 6))
def test_json_round_trip(k):
    f = lambda_poly(k)
    assert poly_from_json(poly_to_json(f)) == f
