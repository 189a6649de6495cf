"""Exact coefficient rings: the integers, the rationals and prime fields.

Coefficients are stored as plain Python ``int`` (for ``ZZ`` and ``GF(p)``)
or ``Fraction`` (for ``QQ``).  A ring only knows how to normalise a value
into canonical form; arithmetic is ordinary Python arithmetic followed by
``ring(value)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class Ring:
    name = "?"

    def __call__(self, x):
        raise NotImplementedError

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, Ring) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    @property
    def characteristic(self) -> int:
        return 0


class IntegerRing(Ring):
    name = "Z"

    def __call__(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return x.numerator
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"cannot coerce {x!r} into Z")
        return x


class RationalField(Ring):
    name = "Q"

    def __call__(self, x):
        if isinstance(x, bool):
            raise TypeError(f"cannot coerce {x!r} into Q")
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else x


class PrimeField(Ring):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"Fp:{p}"

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, x):
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"cannot coerce {x!r} into F_{self.p}")
        return x % self.p


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


ZZ = IntegerRing()
QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def ring_from_name(name: str) -> Ring:
    """Parse ``"Z"``, ``"Q"`` or ``"Fp:<p>"``."""
    if name == "Z":
        return ZZ
    if name == "Q":
        return QQ
    if name.startswith("Fp:"):
        return GF(int(name[3:]))
    raise ValueError(f"unknown ring {name!r}")
