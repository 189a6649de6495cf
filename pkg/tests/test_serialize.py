import json

from hypothesis import given, strategies as st

from affschur import serialize as ser
from affschur.afweyl import AffinePermutation
from affschur.core import PeriodicMatrix
from affschur.hyper import element
from affschur.kstab import KBarElement, k_element, psi_h
from affschur.modp import ModPContext
from affschur.schur import basis_element

from strategies import affine_windows, offdiag_matrices, theta_matrices

CTX = ModPContext(2, 1)


@given(theta_matrices(n=2, r=3), st.integers(-5, 5))
def test_schur_round_trip(A, c):
    x = basis_element(A).scale(c)
    assert ser.loads(ser.dumps(x)) == x


@given(offdiag_matrices(n=3, window=2), st.tuples(*[st.integers(0, 3)] * 3))
def test_hyper_round_trip(A, lam):
    x = element(A, lam).scale(-7)
    assert ser.loads(ser.dumps(x)) == x


@given(offdiag_matrices(), st.tuples(st.integers(-4, 4), st.integers(-4, 4)))
def test_k_round_trip(A, d):
    x = k_element(A.with_diag(d))
    assert ser.loads(ser.dumps(x)) == x


@given(offdiag_matrices(max_entry=1), st.tuples(st.integers(0, 1), st.integers(0, 1)))
def test_kbar_and_khat_round_trip(A, res):
    x = KBarElement({(A, res): 1}, n=2, ctx=CTX)
    assert ser.loads(ser.dumps(x)) == x
    y = psi_h(x)
    assert ser.loads(ser.dumps(y)) == y


@given(affine_windows())
def test_perm_round_trip(w):
    x = AffinePermutation(w)
    assert ser.perm_from_json(ser.perm_to_json(x)) == x


def test_integers_are_strings():
    doc = json.loads(ser.dumps(element(PeriodicMatrix(2, [(1, 2, 3)]), (1, 0))))
    assert doc["terms"][0]["coeff"] == "1"
    assert doc["terms"][0]["lambda"] == ["1", "0"]


def test_deterministic_bytes():
    a = element(PeriodicMatrix(2, [(1, 2, 1)])) + element(PeriodicMatrix(2, [(2, 1, 1)]))
    b = element(PeriodicMatrix(2, [(2, 1, 1)])) + element(PeriodicMatrix(2, [(1, 2, 1)]))
    assert ser.dumps(a) == ser.dumps(b)
