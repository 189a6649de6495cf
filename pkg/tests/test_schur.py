import pytest
from hypothesis import given, strategies as st

from affschur.core import PeriodicMatrix, compositions, enumerate_theta
from affschur.schur import (SchurElement, basis_element, bracket, brace, gen_mul, generator_matrix,
                            identity, monomial, mul)

MATS = list(enumerate_theta(2, 3, 2))


def test_generator_example():
    # [E12 + diag(0,1)] * [diag(0,2)]: E_{1,2} moves one unit from column 2's row
    G = generator_matrix(1, 1, 2, (0, 2))
    assert G == PeriodicMatrix(2, [(1, 2, 1)], (0, 1))
    D = PeriodicMatrix.diagonal((0, 2))
    assert gen_mul(1, 1, 2, D).terms == {PeriodicMatrix(2, [(1, 2, 1)], (0, 1)): 1}


@given(st.sampled_from(MATS), st.sampled_from(MATS))
def test_formula_matches_oracle(B, A):
    x, y = basis_element(B), basis_element(A)
    assert mul(x, y) == mul(x, y, strategy="oracle")


@given(st.sampled_from(MATS), st.sampled_from(MATS), st.sampled_from(MATS))
def test_associative(a, b, c):
    x, y, z = (basis_element(m) for m in (a, b, c))
    assert (x * y) * z == x * (y * z)


def test_identity_is_unit():
    one = identity(2, 3)
    for A in MATS[:20]:
        assert one * basis_element(A) == basis_element(A) == basis_element(A) * one


def test_degree_mismatch():
    with pytest.raises(ValueError):
        mul(identity(2, 2), identity(2, 3))


def test_bracket_zero_exponent_sums_diagonals():
    E = PeriodicMatrix(2, [(1, 2, 1)])
    x = bracket(E, (0, 0), 2)
    assert set(x.terms) == {E.with_diag(mu) for mu in compositions(2, 1)}


def test_brace_binomial_weights():
    x = brace(PeriodicMatrix.zero(2), (1, 0), 2)
    assert x.coefficient(PeriodicMatrix.diagonal((2, 0))) == 2
    assert x.coefficient(PeriodicMatrix.diagonal((0, 2))) == 0


def test_monomial_leading_term():
    A = PeriodicMatrix(2, [(1, 2, 1), (2, 1, 1)])
    # the middle weight loses co(A+) and ro(A-) on the way to the leading term
    m = monomial(A, (1, 2))
    assert m.coefficient(A.with_diag((1, 0))) == 1
    assert m.coefficient(PeriodicMatrix.diagonal((2, 1))) == 2


def test_element_validation():
    with pytest.raises(ValueError):
        SchurElement({PeriodicMatrix.diagonal((1, 1)): 1}, n=2, r=3)
