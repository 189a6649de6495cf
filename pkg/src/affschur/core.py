"""Periodic vectors and matrices, index arithmetic and binomial coefficients.

Conventions
-----------
* Residues and rows are 1-based: a periodic vector ``v`` of length ``n``
  satisfies ``v.at(i) == v[(i - 1) % n]`` for every integer ``i``.
* A :class:`PeriodicMatrix` stores one period of rows (``1 <= i <= n``),
  with column indices ranging over all of ``Z``.  The entry at
  ``(i + s*n, j + s*n)`` equals the entry at ``(i, j)``.
* Off-diagonal entries may be negative; subtype predicates such as
  :meth:`PeriodicMatrix.is_nonneg_offdiag` are checked on demand, never at
  construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial, prod
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

#: finitely supported map Z -> N (e.g. the weights delta, alpha)
FiniteWeight = Dict[int, int]


# ---------------------------------------------------------------------------
# contexts


@dataclass(frozen=True)
class AlgebraContext:
    n: int
    r: Optional[int] = None
    p: Optional[int] = None
    h: Optional[int] = None
    window: int = 2

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("the cyclic quiver needs n >= 2")
        if self.r is not None and self.r < 0:
            raise ValueError("degree r must be nonnegative")
        if self.p is not None:
            from .rings import _is_prime

            if not _is_prime(self.p):
                raise ValueError(f"p={self.p} is not prime")
        if self.h is not None and self.h < 1:
            raise ValueError("level h must be >= 1")
        if self.window < 0:
            raise ValueError("window must be >= 0")

    @property
    def q(self) -> int:
        if self.p is None or self.h is None:
            raise ValueError("p^h needs both p and h")
        return self.p ** self.h


# ---------------------------------------------------------------------------
# binomials


def gbinom(m: int, k: int) -> int:
    """Binomial coefficient m(m-1)...(m-k+1)/k! for any integer m."""
    if k < 0:
        return 0
    if m >= 0:
        return comb(m, k)
    # (-1)^k * C(k - m - 1, k)
    c = comb(k - m - 1, k)
    return -c if k % 2 else c


def vec_binom(top: Sequence[int], bottom: Sequence[int]) -> int:
    """Product of gbinom(top_i, bottom_i) over one period."""
    out = 1
    for t, b in zip(top, bottom):
        if b < 0:
            return 0
        out *= gbinom(t, b)
        if not out:
            return 0
    return out


def multinomial(parts: Iterable[int]) -> int:
    parts = list(parts)
    if any(x < 0 for x in parts):
        raise ValueError("multinomial parts must be nonnegative")
    return factorial(sum(parts)) // prod(factorial(x) for x in parts)


def lucas_check(t: int, s: int, p: int, h: int) -> int:
    """gbinom(t, s) mod p for 0 <= s < p**h, computed digitwise.

    The top is first reduced into [0, p**h) (the binomial is p**h-periodic in
    its top for such s), after which Lucas' theorem applies to the base-p
    digits.
    """
    q = p ** h
    if not 0 <= s < q:
        raise ValueError(f"need 0 <= s < p^h = {q}, got s={s}")
    t %= q
    out = 1
    while s or t:
        out = out * comb(t % p, s % p) % p
        if not out:
            return 0
        t //= p
        s //= p
    return out


# ---------------------------------------------------------------------------
# periodic vectors


class PeriodicVector(tuple):
    """An element of Z^n extended n-periodically; a tuple of length n."""

    def __new__(cls, entries: Iterable[int]):
        return super().__new__(cls, (int(x) for x in entries))

    @property
    def n(self) -> int:
        return len(self)

    def at(self, i: int) -> int:
        return self[(i - 1) % len(self)]

    @classmethod
    def zero(cls, n: int) -> "PeriodicVector":
        return cls((0,) * n)

    @classmethod
    def unit(cls, n: int, i: int) -> "PeriodicVector":
        v = [0] * n
        v[(i - 1) % n] = 1
        return cls(v)

    def add(self, other: Sequence[int]) -> "PeriodicVector":
        return PeriodicVector(a + b for a, b in zip(self, other))

    def sub(self, other: Sequence[int]) -> "PeriodicVector":
        return PeriodicVector(a - b for a, b in zip(self, other))

    def scaled(self, c: int) -> "PeriodicVector":
        return PeriodicVector(c * a for a in self)

    def total(self) -> int:
        return sum(self)

    def __repr__(self):
        return "(" + ",".join(str(x) for x in self) + ")"


def leq_weights(lam: Sequence[int], mu: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(lam, mu))


def lt_weights(lam: Sequence[int], mu: Sequence[int]) -> bool:
    return leq_weights(lam, mu) and tuple(lam) != tuple(mu)


def vadd(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def unit_vector(n: int, i: int, k: int = 1) -> Tuple[int, ...]:
    v = [0] * n
    v[(i - 1) % n] = k
    return tuple(v)


def compositions(n: int, r: int) -> list[Tuple[int, ...]]:
    """All (mu_1, ..., mu_n) in N^n with sum r, in lexicographic order."""
    if r < 0:
        return []
    if n == 1:
        return [(r,)]
    out = []
    for first in range(r, -1, -1):
        for rest in compositions(n - 1, r - first):
            out.append((first,) + rest)
    out.sort()
    return out


def box(n: int, q: int) -> Iterator[Tuple[int, ...]]:
    """All vectors in {0, ..., q-1}^n."""
    return itertools.product(range(q), repeat=n)


def finite_weights(
    k: int, positions: Sequence[int], caps: Optional[Mapping[int, int]] = None
) -> Iterator[FiniteWeight]:
    """Weights supported on ``positions`` with total ``k``.

    ``caps[t]`` bounds the value at ``t``; positions without a cap are only
    bounded by ``k``.
    """
    positions = list(positions)
    caps = caps or {}

    def rec(idx: int, left: int, acc: FiniteWeight):
        if left == 0:
            yield dict(acc)
            return
        if idx == len(positions):
            return
        t = positions[idx]
        top = min(left, caps.get(t, left))
        for v in range(top, -1, -1):
            if v:
                acc[t] = v
            yield from rec(idx + 1, left - v, acc)
            acc.pop(t, None)

    yield from rec(0, k, {})


# ---------------------------------------------------------------------------
# periodic matrices


class PeriodicMatrix:
    """An n-periodic Z x Z integer matrix with finite support per row."""

    __slots__ = ("n", "off", "diag", "_lookup", "_hash")

    def __init__(self, n: int, off: Iterable[Tuple[int, int, int]] = (), diag=None):
        entries: Dict[Tuple[int, int], int] = {}
        d = list(diag) if diag is not None else [0] * n
        if len(d) != n:
            raise ValueError(f"diagonal has length {len(d)}, expected {n}")
        for i, j, a in off:
            if not a:
                continue
            s = (i - 1) // n
            i, j = i - s * n, j - s * n
            if i == j:
                d[i - 1] += a
            else:
                entries[(i, j)] = entries.get((i, j), 0) + a
        self.n = n
        self.off = tuple(sorted((i, j, a) for (i, j), a in entries.items() if a))
        self.diag = PeriodicVector(d)
        self._lookup = None
        self._hash = None

    @classmethod
    def _raw(cls, n: int, table: Dict[Tuple[int, int], int], diag) -> "PeriodicMatrix":
        """Trusted constructor: ``table`` already has rows in 1..n, no
        diagonal keys and no zero values."""
        m = cls.__new__(cls)
        m.n = n
        m.off = tuple(sorted((i, j, a) for (i, j), a in table.items()))
        m.diag = PeriodicVector(diag)
        m._lookup = table
        m._hash = None
        return m

    # -- construction helpers ------------------------------------------------

    @classmethod
    def E(cls, n: int, i: int, j: int, k: int = 1) -> "PeriodicMatrix":
        return cls(n, [(i, j, k)])

    @classmethod
    def diagonal(cls, vec: Sequence[int]) -> "PeriodicMatrix":
        return cls(len(vec), (), vec)

    @classmethod
    def zero(cls, n: int) -> "PeriodicMatrix":
        return cls(n)

    @classmethod
    def from_entries(cls, n: int, entries: Mapping[Tuple[int, int], int], diag=None):
        return cls(n, ((i, j, a) for (i, j), a in entries.items()), diag)

    # -- access ---------------------------------------------------------------

    def _table(self) -> Dict[Tuple[int, int], int]:
        if self._lookup is None:
            self._lookup = {(i, j): a for i, j, a in self.off}
        return self._lookup

    def entry(self, i: int, j: int) -> int:
        s = (i - 1) // self.n
        i, j = i - s * self.n, j - s * self.n
        if i == j:
            return self.diag[i - 1]
        return self._table().get((i, j), 0)

    def row(self, i: int) -> Dict[int, int]:
        """Nonzero entries of row ``i`` (any integer), diagonal included."""
        s = (i - 1) // self.n
        base = i - s * self.n
        out = {j + s * self.n: a for (r, j), a in self._table().items() if r == base}
        if self.diag[base - 1]:
            out[i] = self.diag[base - 1]
        return out

    def offdiag_items(self) -> Dict[Tuple[int, int], int]:
        return dict(self._table())

    # -- equality -------------------------------------------------------------

    def key(self):
        return (self.n, self.off, tuple(self.diag))

    def __eq__(self, other):
        return isinstance(other, PeriodicMatrix) and self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def sort_key(self):
        return (self.offdiag_sigma(), self.off, tuple(self.diag))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "PeriodicMatrix") -> "PeriodicMatrix":
        return PeriodicMatrix(self.n, self.off + other.off, vadd(self.diag, other.diag))

    def __sub__(self, other: "PeriodicMatrix") -> "PeriodicMatrix":
        neg = tuple((i, j, -a) for i, j, a in other.off)
        return PeriodicMatrix(self.n, self.off + neg, vsub(self.diag, other.diag))

    def scaled(self, c: int) -> "PeriodicMatrix":
        return PeriodicMatrix(self.n, ((i, j, c * a) for i, j, a in self.off),
                              [c * x for x in self.diag])

    def with_diag(self, vec: Sequence[int]) -> "PeriodicMatrix":
        m = PeriodicMatrix.__new__(PeriodicMatrix)
        m.n, m.off, m.diag = self.n, self.off, PeriodicVector(vec)
        m._lookup, m._hash = self._lookup, None
        return m

    def offdiag(self) -> "PeriodicMatrix":
        return self.with_diag((0,) * self.n)

    def plus_part(self) -> "PeriodicMatrix":
        return PeriodicMatrix(self.n, [e for e in self.off if e[0] < e[1]])

    def minus_part(self) -> "PeriodicMatrix":
        return PeriodicMatrix(self.n, [e for e in self.off if e[0] > e[1]])

    def transpose(self) -> "PeriodicMatrix":
        return PeriodicMatrix(self.n, ((j, i, a) for i, j, a in self.off), self.diag)

    def column_shift(self, s: int) -> "PeriodicMatrix":
        return PeriodicMatrix(self.n, ((i, j + s, a) for i, j, a in self.off), self.diag)

    # -- profiles -------------------------------------------------------------

    def ro(self) -> PeriodicVector:
        v = list(self.diag)
        for i, _, a in self.off:
            v[i - 1] += a
        return PeriodicVector(v)

    def co(self) -> PeriodicVector:
        v = list(self.diag)
        for _, j, a in self.off:
            v[(j - 1) % self.n] += a
        return PeriodicVector(v)

    def sigma(self) -> int:
        return sum(a for _, _, a in self.off) + sum(self.diag)

    def offdiag_sigma(self) -> int:
        return sum(a for _, _, a in self.off)

    def sigma_bold(self) -> PeriodicVector:
        """sigma_i = sum_{j<i} (a_{i,j} + a_{j,i}) over the off-diagonal part."""
        v = [0] * self.n
        for i, j, a in self.off:
            if j < i:
                v[i - 1] += a
            else:
                v[(j - 1) % self.n] += a
        return PeriodicVector(v)

    def radius(self) -> int:
        return max((abs(j - i) for i, j, _ in self.off), default=0)

    # -- subtype predicates ---------------------------------------------------

    def is_nonneg_offdiag(self) -> bool:
        return all(a > 0 for _, _, a in self.off)

    def is_zero_diag(self) -> bool:
        return not any(self.diag)

    def is_upper(self) -> bool:
        return self.is_zero_diag() and all(i < j for i, j, _ in self.off)

    def is_lower(self) -> bool:
        return self.is_zero_diag() and all(i > j for i, j, _ in self.off)

    def in_theta(self, r: Optional[int] = None) -> bool:
        ok = self.is_nonneg_offdiag() and all(x >= 0 for x in self.diag)
        return ok and (r is None or self.sigma() == r)

    def entry_bounded(self, q: int) -> bool:
        return all(a < q for _, _, a in self.off)

    # -- display --------------------------------------------------------------

    def __repr__(self):
        parts = []
        for i, j, a in self.off:
            c = "" if a == 1 else ("-" if a == -1 else str(a))
            parts.append(f"{c}E({i},{j})")
        if any(self.diag) or not parts:
            parts.append("diag(" + ",".join(str(x) for x in self.diag) + ")")
        return "+".join(parts).replace("+-", "-")


def matrix_profiles(A: PeriodicMatrix):
    """(ro, co, sigma, sigma_bold) of ``A``."""
    return A.ro(), A.co(), A.sigma(), A.sigma_bold()


def lex_positions(A: PeriodicMatrix, sign: int):
    """Off-diagonal positions of ``A`` in the fixed total order on L+ / L-.

    ``sign=+1`` gives (i, j) with i < j, ``sign=-1`` those with i > j, both
    sorted lexicographically (row ascending, then column ascending).
    """
    return [(i, j, a) for i, j, a in A.off if (j - i) * sign > 0]


def window_slots(n: int, window: int) -> list[Tuple[int, int]]:
    """Off-diagonal positions (i, j), 1 <= i <= n, 0 < |j - i| <= window."""
    return [(i, j) for i in range(1, n + 1)
            for j in range(i - window, i + window + 1) if j != i]


def enumerate_theta(n: int, r: int, window: int) -> Iterator[PeriodicMatrix]:
    """All A in Theta(n, r) whose off-diagonal support lies in the window."""
    slots = window_slots(n, window)
    m = len(slots) + n
    for vals in compositions(m, r):
        off = [(i, j, a) for (i, j), a in zip(slots, vals) if a]
        yield PeriodicMatrix(n, off, vals[len(slots):])


def enumerate_offdiag(n: int, sigma: int, window: int, sign: int = 0) -> Iterator[PeriodicMatrix]:
    """Zero-diagonal nonnegative matrices with the given sigma in the window.

    ``sign=+1`` keeps only upper, ``-1`` only lower positions.
    """
    slots = [(i, j) for i, j in window_slots(n, window) if sign == 0 or (j - i) * sign > 0]
    if not slots:
        if sigma == 0:
            yield PeriodicMatrix(n)
        return
    for vals in compositions(len(slots), sigma):
        yield PeriodicMatrix(n, [(i, j, a) for (i, j), a in zip(slots, vals) if a])
