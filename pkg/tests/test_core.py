import pytest
from hypothesis import given, strategies as st

from affschur.core import (AlgebraContext, PeriodicMatrix, PeriodicVector, compositions,
                           enumerate_theta, gbinom, lucas_check, vec_binom, window_slots)

from strategies import offdiag_matrices


def test_gbinom_negative_top():
    assert gbinom(-2, 3) == -4
    assert gbinom(5, 2) == 10
    assert gbinom(3, 0) == 1
    assert gbinom(3, -1) == 0


def test_vec_binom_is_product():
    assert vec_binom((4, 3), (2, 1)) == 6 * 3


@given(st.integers(-30, 30), st.integers(0, 8))
def test_pascal(m, k):
    if k:
        assert gbinom(m + 1, k) == gbinom(m, k) + gbinom(m, k - 1)


def test_lucas_small():
    # binom(5, 1) = 5 = 1 mod 2; binom(4, 1) = 0 mod 2
    assert lucas_check(5, 1, 2, 1) == 1
    assert lucas_check(4, 1, 2, 1) == 0


def test_periodic_entry():
    A = PeriodicMatrix(2, [(1, 4, 3)])
    assert A.entry(3, 6) == 3
    assert A.entry(-1, 2) == 3
    assert A.ro() == (3, 0)
    assert A.co() == (0, 3)


def test_entries_fold_into_rows():
    assert PeriodicMatrix(2, [(3, 6, 1)]) == PeriodicMatrix(2, [(1, 4, 1)])
    assert PeriodicMatrix(2, [(3, 3, 2)]) == PeriodicMatrix.diagonal((2, 0))


@given(offdiag_matrices(n=3, window=2))
def test_transpose_swaps_ro_co(A):
    assert A.transpose().ro() == A.co()
    assert A.transpose().transpose() == A
    assert sum(A.ro()) == sum(A.co()) == A.sigma()


@given(offdiag_matrices(n=2, window=2))
def test_plus_minus_parts(A):
    assert A.plus_part() + A.minus_part() == A
    assert A.plus_part().is_upper() and A.minus_part().is_lower()


def test_window_slots_count():
    assert len(window_slots(2, 2)) == 8
    assert len(window_slots(3, 1)) == 6


def test_compositions():
    assert len(compositions(2, 3)) == 4
    assert len(compositions(3, 2)) == 6


def test_theta_sums():
    for A in enumerate_theta(2, 2, 1):
        assert A.sigma() == 2 and A.in_theta(2)


def test_vector_helpers():
    v = PeriodicVector((1, 2))
    assert v.at(3) == 1
    assert v.add((1, 1)) == (2, 3)
    assert PeriodicVector.unit(2, 2) == (0, 1)


@pytest.mark.parametrize("kw, msg", [
    ({"n": 1}, "n >= 2"),
    ({"n": 2, "p": 4}, "not prime"),
    ({"n": 2, "h": 0}, "level"),
    ({"n": 2, "r": -1}, "nonnegative"),
])
def test_context_rejects(kw, msg):
    with pytest.raises(ValueError, match=msg):
        AlgebraContext(**kw)


def test_context_q():
    assert AlgebraContext(n=2, p=3, h=2).q == 9
