"""Garland's imaginary-root elements.

Polynomials in X_1, X_2, ... with rational coefficients carry the derivation
D+(X_i) = i X_{i+1}.  The elements Lambda_k are sent into U_Q by the algebra
maps Psi_{i,l}: X_m -> E_{i, i+m l n}{0}.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterator, List, Sequence, Tuple

from .core import PeriodicMatrix
from .hyper import HyperElement, element, hall_mul, mul, transpose, unit
from .rings import QQ, ZZ

Monomial = Tuple[int, ...]


class GarlandPolynomial:
    """A polynomial in X_1, X_2, ... with Fraction coefficients.

    Monomials are sorted tuples of indices: (1, 1, 2) is X_1^2 X_2.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Monomial, Fraction] | None = None):
        self.terms: Dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                key = tuple(sorted(mono))
                self.terms[key] = self.terms.get(key, 0) + c
        self.terms = {m: c for m, c in self.terms.items() if c}

    @classmethod
    def one(cls) -> "GarlandPolynomial":
        return cls({(): 1})

    @classmethod
    def X(cls, m: int) -> "GarlandPolynomial":
        if m < 1:
            raise ValueError("indeterminates are X_1, X_2, ...")
        return cls({(m,): 1})

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return GarlandPolynomial(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "GarlandPolynomial":
        return GarlandPolynomial({m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = tuple(sorted(m1 + m2))
                out[key] = out.get(key, 0) + c1 * c2
        return GarlandPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, GarlandPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def weights(self) -> set:
        return {sum(m) for m in self.terms}

    def is_homogeneous(self, k: int) -> bool:
        return self.weights() <= {k}

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]), reverse=True):
            body = "·".join(f"X{m}" for m in mono) or "1"
            parts.append(body if c == 1 else f"{c}·{body}")
        return " + ".join(parts)


def d_plus(f: GarlandPolynomial) -> GarlandPolynomial:
    """The derivation D+(X_i) = i X_{i+1}."""
    out: Dict[Monomial, Fraction] = {}
    for mono, c in f.terms.items():
        for pos, m in enumerate(mono):
            key = mono[:pos] + (m + 1,) + mono[pos + 1:]
            key = tuple(sorted(key))
            out[key] = out.get(key, 0) + c * m
    return GarlandPolynomial(out)


def left_x1(f: GarlandPolynomial) -> GarlandPolynomial:
    return GarlandPolynomial.X(1) * f


@lru_cache(maxsize=None)
def lambda_poly(k: int) -> GarlandPolynomial:
    """Lambda_0 = 1 and Lambda_k = (1/k) sum_{s<k} Lambda_s X_{k-s}."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return GarlandPolynomial.one()
    acc = GarlandPolynomial()
    for s in range(k):
        acc = acc + lambda_poly(s) * GarlandPolynomial.X(k - s)
    return acc.scale(Fraction(1, k))


def lambda_by_operator(k: int) -> GarlandPolynomial:
    """(D+ + L_{X_1})^{k-1}(X_1) / k!, the defining expression."""
    if k == 0:
        return GarlandPolynomial.one()
    f = GarlandPolynomial.X(1)
    for _ in range(k - 1):
        f = d_plus(f) + left_x1(f)
    return f.scale(Fraction(1, factorial(k)))


def operator_identity_check(k: int, f: GarlandPolynomial) -> bool:
    """(L_{X_1} + D+)^k / k! (f) == sum_s Lambda_s D+^{k-s}(f) / (k-s)!."""
    lhs = f
    for _ in range(k):
        lhs = left_x1(lhs) + d_plus(lhs)
    lhs = lhs.scale(Fraction(1, factorial(k)))
    rhs = GarlandPolynomial()
    g = f
    powers = [f]
    for _ in range(k):
        g = d_plus(g)
        powers.append(g)
    for s in range(k + 1):
        rhs = rhs + lambda_poly(s) * powers[k - s].scale(Fraction(1, factorial(k - s)))
    return lhs == rhs


# ---------------------------------------------------------------------------
# partitions


def partitions(k: int, largest: int | None = None) -> Iterator[Tuple[int, ...]]:
    """Partitions of k as weakly decreasing tuples."""
    largest = k if largest is None else largest
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in partitions(k - first, first):
            yield (first,) + rest


def theta(lam: Sequence[int]) -> Dict[int, int]:
    """Partition -> multiplicity vector b_s = #{j : lam_j = s}."""
    b: Dict[int, int] = {}
    for part in lam:
        if part < 1:
            raise ValueError("parts must be positive")
        b[part] = b.get(part, 0) + 1
    return b


def theta_inverse(b: Dict[int, int]) -> Tuple[int, ...]:
    return tuple(sorted((s for s, m in b.items() for _ in range(m)), reverse=True))


def count_vectors(k: int) -> List[Dict[int, int]]:
    return [theta(lam) for lam in partitions(k)]


# ---------------------------------------------------------------------------
# into the hyperalgebra


def _root(n: int, i: int, m: int, l: int) -> PeriodicMatrix:
    return PeriodicMatrix.E(n, i, i + m * l * n)


def partition_matrix(n: int, i: int, l: int, lam: Sequence[int]) -> PeriodicMatrix:
    """A^(i,l)_lam = sum_s E_{i, i + lam_s l n}."""
    out = PeriodicMatrix.zero(n)
    for part in lam:
        out = out + _root(n, i, part, l)
    return out


def count_matrix(n: int, i: int, l: int, b: Dict[int, int]) -> PeriodicMatrix:
    """~A^(i,l)_b = sum_s b_s E_{i, i + s l n}."""
    out = PeriodicMatrix.zero(n)
    for s, m in b.items():
        if m:
            out = out + _root(n, i, s, l).scaled(m)
    return out


def _product_same_row(factors: List[PeriodicMatrix], n: int) -> HyperElement:
    """prod_s factors[s]{0} for pairwise commuting upper roots."""
    acc = {PeriodicMatrix.zero(n): 1}
    for F in factors:
        nxt: Dict[PeriodicMatrix, int] = {}
        for C, c in acc.items():
            for (D, _), v in hall_mul(C, F).terms.items():
                nxt[D] = nxt.get(D, 0) + c * v
        acc = {D: v for D, v in nxt.items() if v}
    return HyperElement({(D, (0,) * n): c for D, c in acc.items()}, n=n, ring=ZZ, check=False)


def psi(i: int, l: int, f: GarlandPolynomial, n: int) -> HyperElement:
    """Psi_{i,l}(f) in U_Q, monomial by monomial."""
    if l == 0:
        raise ValueError("l must be nonzero")
    acc = HyperElement({}, n=n, ring=QQ)
    for mono, c in f.terms.items():
        factors = [_root(n, i, m, l) for m in mono]
        if l < 0:
            # the lower roots commute, so their product is the transpose
            # of the product of the transposed roots
            img = transpose(_product_same_row([F.transpose() for F in factors], n))
        else:
            img = _product_same_row(factors, n)
        img = img.change_ring(QQ)
        acc = acc + img.scale(c)
    return acc


def partition_rhs(k: int, i: int, l: int, n: int) -> HyperElement:
    """sum over partitions lam of k of A^(i,l)_lam {0}."""
    if l == 0:
        raise ValueError("l must be nonzero")
    terms = {}
    for lam in partitions(k):
        terms[(partition_matrix(n, i, l, lam), (0,) * n)] = 1
    return HyperElement(terms, n=n, ring=ZZ)


def psi_lambda(k: int, i: int, l: int, n: int) -> HyperElement:
    """Psi_{i,l}(Lambda_k) over Z (integrality asserted)."""
    x = psi(i, l, lambda_poly(k), n)
    if not x.is_integral():
        raise AssertionError(f"Psi_{i},{l}(Lambda_{k}) has a non-integral coefficient")
    return x.change_ring(ZZ)


def ladder_rhs(n: int, i: int, l: int, m: int, b: Dict[int, int]) -> HyperElement:
    """sum_{s >= 0} (b_{s+m} + 1) ~A_{b + e_{m+s} - e_s}{0}, e_0 = 0."""
    terms: Dict = {}
    for s in [0] + sorted(t for t, v in b.items() if v):
        c = b.get(s + m, 0) + 1
        nb = dict(b)
        nb[s + m] = nb.get(s + m, 0) + 1
        if s:
            nb[s] -= 1
        key = (count_matrix(n, i, l, nb), (0,) * n)
        terms[key] = terms.get(key, 0) + c
    return HyperElement(terms, n=n, ring=ZZ)


def ladder_lhs(n: int, i: int, l: int, m: int, b: Dict[int, int]) -> HyperElement:
    return mul(element(_root(n, i, m, l)), element(count_matrix(n, i, l, b)))


def divided_root(k: int, i: int, j: int, n: int) -> HyperElement:
    """X^(k)_{i,j}: a divided power for i != j mod n, else Psi(Lambda_k)."""
    if k == 0:
        return unit(n)
    if (j - i) % n:
        return element(PeriodicMatrix.E(n, i, j, k))
    return psi_lambda(k, i, (j - i) // n, n)


def garland_monomial(A: PeriodicMatrix) -> HyperElement:
    """The ordered product of X^(a_ij)_{i,j} over upper then lower positions."""
    from .schur import chain_positions

    n = A.n
    if not A.is_zero_diag() or not A.is_nonneg_offdiag():
        raise ValueError(f"{A} must be zero-diagonal and nonnegative")
    acc = unit(n)
    for i, j, a in chain_positions(A):
        acc = mul(acc, divided_root(a, i, j, n))
    return acc


def poly_to_json(f: GarlandPolynomial) -> dict:
    terms = []
    for mono, c in sorted(f.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
        terms.append({"coeff": f"{c.numerator}/{c.denominator}", "monomial": list(mono)})
    return {"terms": terms}


def poly_from_json(doc: dict) -> GarlandPolynomial:
    return GarlandPolynomial({tuple(t["monomial"]): Fraction(t["coeff"]) for t in doc["terms"]})
