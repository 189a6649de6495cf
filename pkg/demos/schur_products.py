"""Multiply basis elements of S(2, 3) both ways and compare."""

from affschur.core import PeriodicMatrix as M
from affschur.schur import basis_element, mul

x = basis_element(M(2, [(1, 2, 1)], (2, 0)))
y = basis_element(M(2, [(2, 1, 1)], (2, 0)))
print("formula:", mul(x, y))
print("oracle: ", mul(x, y, strategy="oracle"))
