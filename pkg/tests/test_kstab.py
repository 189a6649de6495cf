import pytest
from hypothesis import given, strategies as st

from affschur.afweyl import oracle_mul
from affschur.core import PeriodicMatrix, enumerate_theta
from affschur.hyper import element, unit
from affschur.kstab import (KBarElement, k_element, k_gen_mul, kbar_element, kbar_mul, kbar_unit,
                            khat_mul, phi_h, psi_h, restrict_to_schur, tau, zeta_consistency)
from affschur.modp import ModPContext, reduce
from affschur.rings import GF
from affschur.schur import SchurElement

CTX = ModPContext(2, 1)
M = PeriodicMatrix
E12 = M.E(2, 1, 2)
E21 = M.E(2, 2, 1)


def test_negative_diagonal_generator():
    got = k_gen_mul(1, 1, 2, M(2, [(2, 1, 1)], (-1, 0)))
    assert got.terms == {M(2, [(1, 2, 1), (2, 1, 1)], (-1, -1)): 1}


def test_diagonal_idempotent():
    d = k_element(M.diagonal((-2, 5)))
    assert d * d == d


def test_mismatch_is_zero():
    assert (k_element(M.diagonal((1, 0))) * k_element(M.diagonal((0, 1)))).is_zero()


MATS = list(enumerate_theta(2, 2, 2))


@given(st.sampled_from(MATS), st.sampled_from(MATS))
def test_restriction_matches_schur(B, A):
    got = restrict_to_schur(k_element(B) * k_element(A), 2)
    assert got == SchurElement(oracle_mul(B, A).terms, n=2, r=2)


def test_tau():
    x = k_element(M(2, [(1, 2, 1)], (-1, 0)))
    y = k_element(M(2, [(2, 1, 1)], (-1, 0)))
    assert tau((0, 0), x, 2) == x
    assert tau((1, 1), x, 2) == k_element(M(2, [(1, 2, 1)], (1, 2)))
    # a homomorphism only after reduction mod p: over Z a 2[diag(2,2)] term appears
    lhs = tau((1, 1), x * y, 2).change_ring(GF(2))
    assert lhs == (tau((1, 1), x, 2) * tau((1, 1), y, 2)).change_ring(GF(2))


def test_kbar_examples():
    x = kbar_element(E12, (0, 1), CTX)
    y = kbar_element(E21, (0, 1), CTX)
    want = kbar_element(M.zero(2), (1, 1), CTX) + kbar_element(E12 + E21, (0, 0), CTX)
    assert x * y == want
    assert kbar_mul(x, y, shift=(1, 1)) == want
    assert (kbar_element(E12, (1, 0), CTX) * y).is_zero()
    z = psi_h(want)
    assert khat_mul(psi_h(x), psi_h(y)) == z
    assert len(z) == 2


def test_phi_examples():
    assert phi_h(reduce(unit(2), 2), CTX) == kbar_unit(2, CTX)
    e = phi_h(reduce(element(E12), 2), CTX)
    assert set(e.terms) == {(E12, r) for r in [(0, 0), (0, 1), (1, 0), (1, 1)]}
    f = reduce(element(E21), 2)
    assert phi_h(reduce(element(E12), 2) * f, CTX) == e * phi_h(f, CTX)


def test_phi_rejects_non_member():
    with pytest.raises(ValueError):
        phi_h(reduce(element(M.E(2, 1, 2, 2)), 3), CTX)


def test_zeta():
    assert zeta_consistency(reduce(unit(2), 2), CTX)
    ef = reduce(element(E12) * element(E21), 2)
    assert zeta_consistency(ef, CTX)


def test_kbar_validation():
    with pytest.raises(ValueError):
        KBarElement({(M.E(2, 1, 2, 2), (0, 0)): 1}, n=2, ctx=CTX)
