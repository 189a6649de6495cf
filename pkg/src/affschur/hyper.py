"""The integral form U_Z of the enveloping algebra of the loop algebra of gl_n.

Elements are stored in the basis A{lam} (``A`` zero-diagonal with
nonnegative off-diagonal entries, ``lam`` a nonnegative weight); 0{lam} is
the H-binomial (H over lam), and A{0} for strictly upper (lower) A is the
positive (negative) Hall basis element.

Left multiplication by a generator (k E_ij){0} and by (H over mu) have
closed formulas (:func:`gen_terms`, :func:`hmul_terms`).  Any other left
factor is rewritten as a PBW monomial E^(A+) (H over lam) F^(A-) minus
lower terms, recursively.  The other bases (``M``, ``Bp``, ``C``, ``G``) are
unitriangular against ``B`` and are handled by back-substitution.
"""

from __future__ import annotations

import itertools
from math import comb, factorial
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .core import PeriodicMatrix, PeriodicVector, gbinom, lt_weights, vadd, vec_binom, vsub
from .linear import LinearCombination
from .rings import QQ, ZZ, Ring
from .schur import ChainMultiplier, SchurElement, admissible_weights, brace, chain_positions

Index = Tuple[PeriodicMatrix, PeriodicVector]
Terms = Dict[Index, object]

BASES = ("B", "M", "Bp", "C", "G")


class HyperElement(LinearCombination):
    """A finite combination of basis elements indexed by (A, lam)."""

    __slots__ = ("n", "basis")

    def __init__(self, terms=(), n: int = 2, ring: Ring = ZZ, basis: str = "B", check: bool = True):
        super().__init__(terms, ring)
        if basis not in BASES:
            raise ValueError(f"unknown basis tag {basis!r}")
        self.n, self.basis = n, basis
        if check:
            for A, lam in self.terms:
                if A.n != n or len(lam) != n or not A.is_zero_diag():
                    raise ValueError(f"({A}, {lam}) is not a basis index for n={n}")
                if not A.is_nonneg_offdiag() or min(lam) < 0:
                    raise ValueError(f"({A}, {lam}) has a negative entry")

    def _copy_meta(self, other):
        self.n, self.basis = other.n, other.basis

    def _meta_eq(self, other):
        return self.n == other.n and self.basis == other.basis

    @staticmethod
    def index_sort_key(key):
        A, lam = key
        return (A.offdiag_sigma(), sum(lam), A.off, tuple(lam))

    def format_index(self, key):
        A, lam = key
        head = "0" if not A.off else (repr(A) if len(A.off) == 1 else f"({A!r})")
        return f"{head}{{{','.join(str(x) for x in lam)}}}"

    def __mul__(self, other):
        if isinstance(other, HyperElement):
            return mul(self, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.basis, frozenset(self.terms.items())))


def index(A: PeriodicMatrix, lam: Optional[Sequence[int]] = None) -> Index:
    return A, PeriodicVector(lam if lam is not None else (0,) * A.n)


def element(A: PeriodicMatrix, lam: Optional[Sequence[int]] = None, ring: Ring = ZZ,
            basis: str = "B") -> HyperElement:
    return HyperElement({index(A, lam): 1}, n=A.n, ring=ring, basis=basis)


def unit(n: int, ring: Ring = ZZ) -> HyperElement:
    return element(PeriodicMatrix.zero(n), None, ring)


def h_binomial(lam: Sequence[int], ring: Ring = ZZ) -> HyperElement:
    """(H over lam) = 0{lam}."""
    return element(PeriodicMatrix.zero(len(lam)), lam, ring)


def _wrap(terms: Terms, n: int, ring: Ring, basis: str = "B") -> HyperElement:
    return HyperElement(terms, n=n, ring=ring, basis=basis, check=False)


# ---------------------------------------------------------------------------
# closed formulas


def _box(lam: Sequence[int]):
    return itertools.product(*(range(x + 1) for x in lam))


def gen_terms(k: int, i: int, j: int, A: PeriodicMatrix, lam: Sequence[int]) -> Terms:
    """(k E_ij){0} · A{lam}.

    Sum over alpha (weights on Z of total k) and delta <= lam of
    a(alpha, delta) A^(alpha){alpha_i e_i + delta}, where
    A^(alpha) = A + sum_{t != i} alpha_t E_it - sum_{t != j} alpha_t E_jt and

        a(alpha, delta) = binom(delta_i + alpha_i, alpha_i)
            * prod_{t != i} binom(a_it + alpha_t - [i = j mod n] alpha_{t+j-i}, alpha_t)
            * sum_b binom(alpha_j e_j - alpha_i e_i, lam - delta - b e_i) binom(alpha_i, b)

    with b running over 0 <= b <= min(alpha_i, lam_i - delta_i).  Terms whose
    matrix has a negative off-diagonal entry vanish.
    """
    n = A.n
    lam = PeriodicVector(lam)
    i, j, same, weights = admissible_weights(k, i, j, A, skip_j=True)
    row_i = A.row(i)
    ri, rj = i - 1, (j - 1) % n
    out: Terms = {}
    for alpha in weights:
        c_alpha = 1
        for t, a in alpha.items():
            if t == i:
                continue
            fwd = alpha.get(t + j - i, 0) if same else 0
            c_alpha *= gbinom(row_i.get(t, 0) + a - fwd, a)
            if not c_alpha:
                break
        if not c_alpha:
            continue
        moves = [(i, t, a) for t, a in alpha.items() if t != i]
        moves += [(j, t, -a) for t, a in alpha.items() if t != j]
        B = A + PeriodicMatrix(n, moves)
        if not B.is_nonneg_offdiag() or not B.is_zero_diag():
            continue
        ai, aj = alpha.get(i, 0), alpha.get(j, 0)
        top = [0] * n
        top[rj] += aj
        top[ri] -= ai
        for delta in _box(lam):
            c = comb(delta[ri] + ai, ai)
            s = 0
            for b in range(min(ai, lam[ri] - delta[ri]) + 1):
                bottom = list(vsub(lam, delta))
                bottom[ri] -= b
                s += vec_binom(top, bottom) * comb(ai, b)
            c *= s * c_alpha
            if c:
                mu = list(delta)
                mu[ri] += ai
                key = (B, PeriodicVector(mu))
                out[key] = out.get(key, 0) + c
    return {key: c for key, c in out.items() if c}


def gen_mul(k: int, i: int, j: int, A: PeriodicMatrix, lam: Optional[Sequence[int]] = None,
            ring: Ring = ZZ) -> HyperElement:
    if i == j:
        raise ValueError("i and j must differ")
    lam = lam if lam is not None else (0,) * A.n
    return _wrap(gen_terms(k, i, j, A, lam), A.n, ring)


def hmul_terms(mu: Sequence[int], A: PeriodicMatrix, lam: Sequence[int]) -> Terms:
    """(H over mu) · A{lam}.

    sum_{delta <= mu} binom(delta + lam, lam)
        * (sum_{beta <= mu - delta, beta <= lam} binom(ro(A), mu - beta - delta) binom(lam, beta))
        * A{lam + delta}
    """
    ro = A.ro()
    out: Terms = {}
    for delta in _box(mu):
        c = vec_binom(vadd(delta, lam), lam)
        if not c:
            continue
        s = 0
        cap = [min(a, b) for a, b in zip(vsub(mu, delta), lam)]
        for beta in _box(cap):
            s += vec_binom(ro, vsub(vsub(mu, beta), delta)) * vec_binom(lam, beta)
        if s:
            out[(A, PeriodicVector(vadd(lam, delta)))] = c * s
    return out


def hmul(mu: Sequence[int], x: HyperElement) -> HyperElement:
    acc: Terms = {}
    for (A, lam), c in x.terms.items():
        for key, v in hmul_terms(mu, A, lam).items():
            acc[key] = acc.get(key, 0) + c * v
    return _wrap(acc, x.n, x.ring, x.basis)


# ---------------------------------------------------------------------------
# general products


def _split(A: PeriodicMatrix):
    upper = PeriodicMatrix(A.n, [e for e in A.off if e[0] < e[1]])
    lower = PeriodicMatrix(A.n, [e for e in A.off if e[0] > e[1]])
    return upper, lower


def _lower_key(key: Index):
    A, lam = key
    return A.offdiag_sigma(), sum(lam)


def _is_lower(key: Index, lead: Index) -> bool:
    (B, mu), (A, lam) = key, lead
    return B.offdiag_sigma() < A.offdiag_sigma() or (B == A and lt_weights(mu, lam))


class HyperMultiplier:
    """Left multiplication in U_Z by PBW rewriting of the left factor."""

    def __init__(self):
        self._monomials: Dict[Index, Terms] = {}
        self._products: Dict[Tuple[Index, Index], Terms] = {}

    @staticmethod
    def _chain(A: PeriodicMatrix, terms: Terms) -> Terms:
        cur = dict(terms)
        for i, j, a in reversed(chain_positions(A)):
            nxt: Terms = {}
            for (C, mu), c in cur.items():
                for key, v in gen_terms(a, i, j, C, mu).items():
                    nxt[key] = nxt.get(key, 0) + c * v
            cur = {key: v for key, v in nxt.items() if v}
        return cur

    def apply_monomial(self, A: PeriodicMatrix, lam: Sequence[int], terms: Terms) -> Terms:
        """E^(A+) (H over lam) F^(A-) applied on the left of ``terms``."""
        upper, lower = _split(A)
        cur = self._chain(lower, terms)
        if any(lam):
            nxt: Terms = {}
            for (C, mu), c in cur.items():
                for key, v in hmul_terms(lam, C, mu).items():
                    nxt[key] = nxt.get(key, 0) + c * v
            cur = {key: v for key, v in nxt.items() if v}
        return self._chain(upper, cur)

    def monomial(self, A: PeriodicMatrix, lam: Sequence[int]) -> Terms:
        key = index(A, lam)
        got = self._monomials.get(key)
        if got is None:
            got = self.apply_monomial(A, key[1], {index(PeriodicMatrix.zero(A.n)): 1})
            check_unitriangular(got, key, "M")
            self._monomials[key] = got
        return got

    def basis_product(self, x: Index, y: Index) -> Terms:
        key = (x, y)
        got = self._products.get(key)
        if got is not None:
            return got
        A, lam = x
        if not A.off and not any(lam):
            got = {y: 1}
        elif not A.off:
            got = hmul_terms(lam, y[0], y[1])
        else:
            got = self.apply_monomial(A, lam, {y: 1})
            for z, h in self.monomial(A, lam).items():
                if z == x:
                    continue
                for w, v in self.basis_product(z, y).items():
                    got[w] = got.get(w, 0) - h * v
            got = {w: v for w, v in got.items() if v}
        self._products[key] = got
        return got

    def multiply(self, x: Terms, y: Terms) -> Terms:
        acc: Terms = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for w, v in self.basis_product(a, b).items():
                    acc[w] = acc.get(w, 0) + ca * cb * v
        return {w: v for w, v in acc.items() if v}


MULTIPLIER = HyperMultiplier()


def check_unitriangular(terms: Terms, lead: Index, tag: str = "") -> None:
    c = terms.get(lead)
    if c != 1:
        raise AssertionError(f"{tag} element at {lead} has leading coefficient {c}")
    for key in terms:
        if key != lead and not _is_lower(key, lead):
            raise AssertionError(f"{tag} element at {lead} has a non-lower term {key}")


def mul(x: HyperElement, y: HyperElement) -> HyperElement:
    if x.n != y.n or x.ring != y.ring:
        raise ValueError("factors live in different algebras")
    if x.basis != "B" or y.basis != "B":
        raise ValueError("products are computed in the basis B; convert first")
    return _wrap(MULTIPLIER.multiply(x.terms, y.terms), x.n, x.ring)


def transpose(x: HyperElement) -> HyperElement:
    """The anti-automorphism A{lam} -> (tA){lam}."""
    return _wrap({(A.transpose(), lam): c for (A, lam), c in x.terms.items()}, x.n, x.ring, x.basis)


# ---------------------------------------------------------------------------
# other bases and conversion


def basis_expansion(tag: str, A: PeriodicMatrix, lam: Sequence[int]) -> Terms:
    """The element of basis ``tag`` at (A, lam), written in the basis B."""
    n = A.n
    key = index(A, lam)
    if tag == "B":
        return {key: 1}
    if tag == "M":
        return MULTIPLIER.monomial(A, lam)
    upper, lower = _split(A)
    H = {index(PeriodicMatrix.zero(n), lam): 1}
    if tag == "Bp":
        out = MULTIPLIER.multiply({index(A): 1}, H)
    elif tag == "C":
        out = MULTIPLIER.multiply(MULTIPLIER.multiply({index(upper): 1}, H), {index(lower): 1})
    elif tag == "G":
        from .garland import garland_monomial

        e = garland_monomial(upper).terms
        f = garland_monomial(lower).terms
        out = MULTIPLIER.multiply(MULTIPLIER.multiply(e, H), f)
        if any(isinstance(c, Fraction) and c.denominator != 1 for c in out.values()):
            raise AssertionError(f"Garland element at {key} is not integral")
        out = {k: int(c) for k, c in out.items()}
    else:
        raise ValueError(f"unknown basis tag {tag!r}")
    check_unitriangular(out, key, tag)
    return out


_EXPANSIONS: Dict[Tuple[str, Index], Terms] = {}


def _expansion(tag: str, key: Index) -> Terms:
    got = _EXPANSIONS.get((tag, key))
    if got is None:
        got = basis_expansion(tag, key[0], key[1])
        _EXPANSIONS[(tag, key)] = got
    return got


def to_B(x: HyperElement) -> HyperElement:
    acc: Terms = {}
    for key, c in x.terms.items():
        for w, v in _expansion(x.basis, key).items():
            acc[w] = acc.get(w, 0) + c * v
    return _wrap(acc, x.n, x.ring)


def from_B(x: HyperElement, tag: str) -> HyperElement:
    """Rewrite x (basis B) in basis ``tag`` by peeling off leading terms."""
    if x.basis != "B":
        raise ValueError("input must be in basis B")
    ring = x.ring
    rest = dict(x.terms)
    out: Terms = {}
    while rest:
        key = max(rest, key=lambda k: (_lower_key(k), HyperElement.index_sort_key(k)))
        c = rest[key]
        out[key] = c
        for w, v in _expansion(tag, key).items():
            nv = ring(rest.get(w, 0) - c * v)
            if nv:
                rest[w] = nv
            else:
                rest.pop(w, None)
    return _wrap(out, x.n, ring, tag)


def convert(x: HyperElement, source: str, target: str) -> HyperElement:
    if x.basis != source:
        x = _wrap(x.terms, x.n, x.ring, source)
    b = to_B(x)
    return b if target == "B" else from_B(b, target)


# ---------------------------------------------------------------------------
# the positive part: Hall products at v = 1


def hall_gen_terms(k: int, i: int, j: int, A: PeriodicMatrix) -> Dict[PeriodicMatrix, int]:
    """u+_{k E_ij} u+_A for i < j, A strictly upper: the generator formula with
    alpha supported on t > i."""
    if not i < j:
        raise ValueError("need i < j")
    n = A.n
    i0, j0, same, weights = admissible_weights(k, i, j, A, skip_j=True)
    row_i = A.row(i0)
    out: Dict[PeriodicMatrix, int] = {}
    for alpha in weights:
        if any(t <= i0 for t in alpha):
            continue
        c = 1
        for t, a in alpha.items():
            fwd = alpha.get(t + j0 - i0, 0) if same else 0
            c *= gbinom(row_i.get(t, 0) + a - fwd, a)
            if not c:
                break
        if not c:
            continue
        moves = [(i0, t, a) for t, a in alpha.items()] + [(j0, t, -a) for t, a in alpha.items() if t != j0]
        B = A + PeriodicMatrix(n, moves)
        if not B.is_nonneg_offdiag() or not B.is_zero_diag():
            raise AssertionError(f"Hall product left the positive part: {B}")
        out[B] = out.get(B, 0) + c
    return {B: c for B, c in out.items() if c}


HALL = ChainMultiplier(hall_gen_terms, start=lambda A: PeriodicMatrix.zero(A.n),
                       compatible=lambda A, C: True)


def _check_upper(A: PeriodicMatrix):
    if not (A.is_zero_diag() and A.is_nonneg_offdiag() and all(i < j for i, j, _ in A.off)):
        raise ValueError(f"{A} is not strictly upper triangular")


def hall_mul(A: PeriodicMatrix, B: PeriodicMatrix, ring: Ring = ZZ) -> HyperElement:
    """u+_A u+_B, written as sum c_C C{0}.

    sigma(C) can be smaller than sigma(A) + sigma(B): E_{1,3} E_{1,3} (n = 2)
    contains E_{1,5}.
    """
    _check_upper(A)
    _check_upper(B)
    terms = HALL.basis_product(A, B)
    return _wrap({index(C): c for C, c in terms.items()}, A.n, ring)


def hall_mul_lower(A: PeriodicMatrix, B: PeriodicMatrix, ring: Ring = ZZ) -> HyperElement:
    """u-_A u-_B for strictly upper A, B (u-_A = (tA){0})."""
    return transpose(hall_mul(B, A, ring))


def hall_by_evaluation(A: PeriodicMatrix, B: PeriodicMatrix) -> HyperElement:
    """u+_A u+_B read off from the Schur product at r = sigma(A) + sigma(B).

    The image of u+_C there is the sum of [C + diag(mu)] over all mu, so
    c_C is the (necessarily constant) coefficient of any [C + diag(mu)].
    Terms with sigma(C) below r do occur (imaginary directions) and are
    recovered the same way.
    """
    from .core import compositions

    r = A.sigma() + B.sigma()
    prod_ = evaluate_xi(element(A), r) * evaluate_xi(element(B), r)
    seen: Dict[PeriodicMatrix, set] = {}
    for C, c in prod_.terms.items():
        seen.setdefault(C.offdiag(), set()).add((tuple(C.diag), c))
    terms = {}
    for C, found in seen.items():
        coeffs = {c for _, c in found}
        if len(coeffs) != 1 or len(found) != len(compositions(A.n, r - C.sigma())):
            raise AssertionError(f"evaluation of u+_A u+_B is not constant along {C}")
        terms[index(C)] = coeffs.pop()
    return _wrap(terms, A.n, ZZ)


# ---------------------------------------------------------------------------
# evaluation and checks


def evaluate_xi(x: HyperElement, r: int) -> SchurElement:
    """A{lam} -> A{lam, r} termwise."""
    if x.basis != "B":
        x = to_B(x)
    acc: Dict[PeriodicMatrix, object] = {}
    for (A, lam), c in x.terms.items():
        if A.sigma() > r:
            continue
        for B, v in brace(A, lam, r).terms.items():
            acc[B] = acc.get(B, 0) + c * v
    return SchurElement(acc, n=x.n, r=r, ring=x.ring, check=False)


def divided_power_check(i: int, j: int, k: int, n: int) -> bool:
    """(E_ij{0})^k / k! == (k E_ij){0}, computed over Q."""
    if (i - j) % n == 0:
        raise ValueError("i and j must differ mod n")
    E = element(PeriodicMatrix.E(n, i, j), ring=QQ)
    power = unit(n, QQ)
    for _ in range(k):
        power = mul(E, power)
    lhs = power.scale(Fraction(1, factorial(k)))
    rhs = element(PeriodicMatrix.E(n, i, j, k), ring=QQ) if k else unit(n, QQ)
    return lhs == rhs
