import pytest
from hypothesis import given, strategies as st

from affschur.core import PeriodicMatrix
from affschur.hyper import element, h_binomial
from affschur.modp import (ModPContext, basis_size, binomial_periodicity_failures,
                           binomial_vanishing_failures, closure_report, conversion_report,
                           enumerate_basis, independence_check, little_inf_basis,
                           little_triangularity_report, membership_h, rank_mod_p, reduce, xi_rk,
                           zero_part_report)
from affschur.rings import GF
from affschur.schur import basis_element

from strategies import offdiag_matrices

CTX = ModPContext(2, 1)
E12 = PeriodicMatrix.E(2, 1, 2)
E21 = PeriodicMatrix.E(2, 2, 1)
lams = st.tuples(st.integers(0, 2), st.integers(0, 2))


@pytest.mark.parametrize("p,h", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_binomial_identities_mod_p(p, h):
    assert binomial_periodicity_failures(p, h) == []
    assert binomial_vanishing_failures(p, h) == []


def test_reduce_kills_multiples():
    x = element(PeriodicMatrix.E(2, 1, 2, 2)).scale(2)
    assert reduce(x, 2).is_zero()


def test_reduce_keeps_support_mod_3():
    x = element(E12) * element(E21)
    y = reduce(x, 3)
    assert set(y.terms) == set(x.terms)


@given(offdiag_matrices(max_sigma=2), lams, offdiag_matrices(max_sigma=2), lams)
def test_reduce_is_ring_map(A, lam, B, mu):
    x, y = element(A, lam), element(B, mu)
    assert reduce(x * y, 2) == reduce(x, 2) * reduce(y, 2)


@pytest.mark.parametrize("x, expected", [
    (element(PeriodicMatrix.E(2, 1, 2, 2)), False),
    (element(E12, (1, 0)), True),
    (h_binomial((2, 0)), False),
])
def test_membership(x, expected):
    assert membership_h(reduce(x, 2), CTX) is expected


def test_window_zero_basis():
    elems = enumerate_basis("B_h", CTX, 2, 0)
    assert len(elems) == 4


def test_basis_size_formula():
    # eight slots (i, j) with 0 < |j - i| <= 2 for n = 2, times 2^2 weights
    assert basis_size(2, CTX, 2) == 2 ** 8 * 2 ** 2
    assert basis_size(2, ModPContext(3, 1), 1) == 3 ** 4 * 3 ** 2


@pytest.mark.parametrize("kind", ["B_h", "M_h", "C_h", "G_h"])
def test_all_bases_same_size_window_one(kind):
    assert len(enumerate_basis(kind, CTX, 2, 1)) == basis_size(2, CTX, 1)


@pytest.mark.parametrize("tag", ["M", "C", "G"])
def test_conversion_unitriangular(tag):
    rep = conversion_report(tag, CTX, 2, 1)
    assert not any(v for k, v in rep.items() if k != "checked")


def test_closure_window_one():
    rep = closure_report(CTX, 2, 1)
    assert rep["generator_products"] > 0
    assert rep["generator_escapes"] == rep["h_escapes"] == 0


def test_zero_part_closed():
    assert zero_part_report(CTX, 2) == 0
    assert zero_part_report(ModPContext(3, 1), 2) == 0


def test_xi_small():
    x = reduce(h_binomial((1, 0)), 2)
    assert xi_rk(x, 1) == basis_element(PeriodicMatrix.diagonal((1, 0)), GF(2))


def test_rank_mod_p():
    assert rank_mod_p([[1, 1], [1, 1]], 2) == 1
    assert rank_mod_p([[1, 2], [2, 1]], 3) == 1
    assert rank_mod_p([[1, 2], [2, 1]], 2) == 2


def test_independence_examples():
    zero = PeriodicMatrix.zero(2)
    assert independence_check([(zero, (1, 0)), (zero, (0, 1))], CTX)
    assert independence_check([(E12, (3, 1))], CTX)


def test_independence_needs_several_degrees():
    # at r = 1 alone 0{0} = 0{e1} + 0{e2}; the degree-0 row separates them
    zero = PeriodicMatrix.zero(2)
    assert independence_check([(zero, (0, 0)), (zero, (1, 0)), (zero, (0, 1))], CTX)


def test_little_basis_sizes():
    assert len(little_inf_basis("P_hr", 1, CTX, 2, 2)) == 10
    assert len(little_inf_basis("P_hr", 0, CTX, 2, 2)) == 1


def test_little_triangular():
    rep = little_triangularity_report(2, CTX, 2, 1)
    assert not any(v for k, v in rep.items() if "fail" in k)
