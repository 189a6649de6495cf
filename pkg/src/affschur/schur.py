"""The affine Schur algebra S(n, r) with its standard basis [A].

Products of a generator ``[k E_ij + diag(ro(A) - k e_j)]`` with ``[A]`` use a
closed formula (:func:`gen_mul`).  General products rewrite the left factor
as an ordered product of such generators minus lower terms, recursively
(:class:`ChainMultiplier`).  The convolution oracle in :mod:`affschur.afweyl`
gives an independent second path.
"""

from __future__ import annotations

from math import prod
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .core import PeriodicMatrix, PeriodicVector, compositions, gbinom, vec_binom, vsub
from .linear import LinearCombination
from .rings import ZZ, Ring

Terms = Dict[PeriodicMatrix, int]


class SchurElement(LinearCombination):
    """A finite combination of basis elements [A], A in Theta(n, r)."""

    __slots__ = ("n", "r")

    def __init__(self, terms=(), n: int = 2, r: int = 0, ring: Ring = ZZ, check: bool = True):
        super().__init__(terms, ring)
        self.n, self.r = n, r
        if check:
            for A in self.terms:
                if A.n != n or not A.in_theta(r):
                    raise ValueError(f"{A} is not an index of S({n},{r})")

    def _copy_meta(self, other):
        self.n, self.r = other.n, other.r

    def _meta_eq(self, other):
        return self.n == other.n and self.r == other.r

    @staticmethod
    def index_sort_key(A):
        return A.sort_key()

    def format_index(self, A):
        return f"[{A}]"

    def __mul__(self, other):
        if isinstance(other, SchurElement):
            return mul(self, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.r, frozenset(self.terms.items())))


def basis_element(A: PeriodicMatrix, ring: Ring = ZZ) -> SchurElement:
    return SchurElement({A: 1}, n=A.n, r=A.sigma(), ring=ring)


def identity(n: int, r: int, ring: Ring = ZZ) -> SchurElement:
    """sum over lam in Lambda(n, r) of [diag(lam)]."""
    return SchurElement({PeriodicMatrix.diagonal(lam): 1 for lam in compositions(n, r)},
                        n=n, r=r, ring=ring)


# ---------------------------------------------------------------------------
# the generator formula


def _shift_row(n: int, i: int, j: int) -> Tuple[int, int]:
    s = (i - 1) // n
    return i - s * n, j - s * n


def _weights(positions: List[int], cap: Callable[[int, Dict[int, int], int], int], k: int):
    """Weights of total k on ``positions``; ``cap(t, partial, left)`` bounds
    the value at t given the values already chosen."""
    out: List[Dict[int, int]] = []

    def rec(idx: int, left: int, acc: Dict[int, int]):
        if left == 0:
            out.append(dict(acc))
            return
        if idx == len(positions):
            return
        t = positions[idx]
        for v in range(cap(t, acc, left), -1, -1):
            if v:
                acc[t] = v
            rec(idx + 1, left - v, acc)
            acc.pop(t, None)

    rec(0, k, {})
    return out


def admissible_weights(k: int, i: int, j: int, A: PeriodicMatrix, skip_j: bool = False):
    """Weights delta of total k keeping row j nonnegative after the move.

    Returns (i, j, same, weights) with i shifted into 1..n (j shifted along),
    ``same`` telling whether i = j mod n, and every delta satisfying
    a_{j,t} - delta_t + [same] delta_{t+i-j} >= 0 for all t (all t != j when
    ``skip_j``).
    """
    n = A.n
    if k < 1:
        raise ValueError("k must be positive")
    if i == j:
        raise ValueError("i and j must differ")
    i, j = _shift_row(n, i, j)
    same = (j - i) % n == 0
    row_j = A.row(j)
    base = [t for t, a in row_j.items() if a > 0 and t != j]
    if skip_j or row_j.get(j, 0) > 0:
        base.append(j)
    if same:
        # delta_t <= a_{j,t} + delta_{t+i-j}: walk against the step so that
        # delta_{t+i-j} is already fixed when t is reached
        step = j - i
        positions = sorted({t + c * step for t in base for c in range(k + 1)},
                           reverse=step < 0)

        def cap(t, acc, left):
            if skip_j and t == j:
                return left
            return min(left, row_j.get(t, 0) + acc.get(t - step, 0))
    else:
        positions = sorted(set(base))

        def cap(t, acc, left):
            if skip_j and t == j:
                return left
            return min(left, row_j.get(t, 0))
    return i, j, same, _weights(positions, cap, k)


def generator_terms(k: int, i: int, j: int, A: PeriodicMatrix, skip_j: bool = False) -> Terms:
    """Integer expansion of [k E_ij + diag(ro(A) - k e_j)] · [A].

    The sum runs over weights delta on Z with total k subject to
    a_{j,t} - delta_t + [i = j mod n] delta_{t+i-j} >= 0 for every t
    (every t other than j when ``skip_j``, the unit-free stabilized algebra).
    The coefficient is prod_t binom(a_{i,t} + delta_t - [i = j mod n]
    delta_{t+j-i}, delta_t) and the index is A + sum_t delta_t (E_it - E_jt).
    No precondition on ro(A) is checked here.
    """
    n = A.n
    i, j, same, weights = admissible_weights(k, i, j, A, skip_j)
    row_i = A.row(i)
    table = A._table()
    sj = (j - 1) // n
    out: Terms = {}
    for delta in weights:
        c = 1
        for t, d in delta.items():
            fwd = delta.get(t + j - i, 0) if same else 0
            c *= gbinom(row_i.get(t, 0) + d - fwd, d)
            if not c:
                break
        if not c:
            continue
        tbl = dict(table)
        diag = list(A.diag)
        for t, d in delta.items():
            for row, col, v in ((i, t, d), (j - sj * n, t - sj * n, -d)):
                if row == col:
                    diag[row - 1] += v
                else:
                    w = tbl.get((row, col), 0) + v
                    if w:
                        tbl[(row, col)] = w
                    else:
                        del tbl[(row, col)]
        C = PeriodicMatrix._raw(n, tbl, diag)
        out[C] = out.get(C, 0) + c
    return {C: c for C, c in out.items() if c}


def generator_matrix(k: int, i: int, j: int, lam: Sequence[int]) -> PeriodicMatrix:
    """k E_ij + diag(lam - k e_j)."""
    n = len(lam)
    return PeriodicMatrix(n, [(i, j, k)], vsub(lam, [k if t == (j - 1) % n else 0 for t in range(n)]))


def gen_mul(k: int, i: int, j: int, A: PeriodicMatrix, ring: Ring = ZZ) -> SchurElement:
    """[k E_ij + diag(ro(A) - k e_j)] · [A] in S(n, sigma(A))."""
    if not A.in_theta():
        raise ValueError(f"{A} is not in Theta(n, r)")
    if A.ro().at(j) < k:
        raise ValueError(f"ro(A) = {A.ro()} is not >= {k} e_{j}")
    return SchurElement(generator_terms(k, i, j, A), n=A.n, r=A.sigma(), ring=ring)


def apply_generator(k: int, i: int, j: int, x: SchurElement) -> SchurElement:
    """(k E_ij)[0, r] · x, i.e. each [B] is hit by the generator fitted to ro(B)."""
    acc: Dict[PeriodicMatrix, int] = {}
    for B, c in x.terms.items():
        if B.ro().at(j) < k:
            continue
        for C, v in generator_terms(k, i, j, B).items():
            acc[C] = acc.get(C, 0) + c * v
    return SchurElement(acc, n=x.n, r=x.r, ring=x.ring, check=False)


# ---------------------------------------------------------------------------
# general products by triangular rewriting


def chain_positions(A: PeriodicMatrix) -> List[Tuple[int, int, int]]:
    """Off-diagonal entries of A in the fixed order: upper part, then lower,
    each sorted by (row, column)."""
    upper = [e for e in A.off if e[0] < e[1]]
    lower = [e for e in A.off if e[0] > e[1]]
    return upper + lower


class ChainMultiplier:
    """Left multiplication by basis elements through generator chains.

    ``gen(k, i, j, C)`` returns the term map of the generator fitted to C
    times [C] (or {} when that generator does not exist).  For a basis index
    A the ordered product of generators a_ij E_ij, with diagonals fixed by
    matching profiles from the right, equals [A] plus terms whose off-diagonal
    part has strictly smaller sigma; subtracting those recursively gives
    [A] · [C] for every C.

    ``start(A)`` is the right factor the chain is applied to when expanding
    A itself, and ``compatible(A, C)`` says whether [A][C] can be nonzero.
    """

    def __init__(self, gen: Callable[[int, int, int, PeriodicMatrix], Terms],
                 start: Callable[[PeriodicMatrix], PeriodicMatrix] = lambda A: PeriodicMatrix.diagonal(A.co()),
                 compatible: Callable[[PeriodicMatrix, PeriodicMatrix], bool] = lambda A, C: tuple(A.co()) == tuple(C.ro())):
        self.gen = gen
        self.start = start
        self.compatible = compatible
        self._expansion: Dict[PeriodicMatrix, Terms] = {}
        self._products: Dict[Tuple[PeriodicMatrix, PeriodicMatrix], Terms] = {}

    def apply_chain(self, A: PeriodicMatrix, terms: Terms) -> Terms:
        cur = dict(terms)
        for i, j, a in reversed(chain_positions(A)):
            nxt: Terms = {}
            for C, c in cur.items():
                for D, v in self.gen(a, i, j, C).items():
                    nxt[D] = nxt.get(D, 0) + c * v
            cur = {D: v for D, v in nxt.items() if v}
        return cur

    def expansion(self, A: PeriodicMatrix) -> Terms:
        """The chain for A applied to ``start(A)``, as a term map."""
        got = self._expansion.get(A)
        if got is None:
            got = self.apply_chain(A, {self.start(A): 1})
            lead = got.get(A)
            if lead != 1:
                raise AssertionError(f"chain for {A} has leading coefficient {lead}")
            top = A.offdiag_sigma()
            for B in got:
                if B != A and B.offdiag_sigma() >= top:
                    raise AssertionError(f"chain for {A} has a non-lower term {B}")
            self._expansion[A] = got
        return got

    def basis_product(self, A: PeriodicMatrix, C: PeriodicMatrix) -> Terms:
        if not self.compatible(A, C):
            return {}
        key = (A, C)
        got = self._products.get(key)
        if got is not None:
            return got
        if not A.off:
            got = {C: 1}
        else:
            got = self.apply_chain(A, {C: 1})
            for B, h in self.expansion(A).items():
                if B == A:
                    continue
                for D, v in self.basis_product(B, C).items():
                    got[D] = got.get(D, 0) - h * v
            got = {D: v for D, v in got.items() if v}
        self._products[key] = got
        return got

    def multiply(self, x: Terms, y: Terms) -> Terms:
        acc: Terms = {}
        for A, a in x.items():
            for C, c in y.items():
                for D, v in self.basis_product(A, C).items():
                    acc[D] = acc.get(D, 0) + a * c * v
        return {D: v for D, v in acc.items() if v}


def _schur_gen(k: int, i: int, j: int, C: PeriodicMatrix) -> Terms:
    if C.ro().at(j) < k:
        return {}
    return generator_terms(k, i, j, C)


SCHUR_CHAINS = ChainMultiplier(_schur_gen)


def monomial(A: PeriodicMatrix, lam: Sequence[int], ring: Ring = ZZ) -> SchurElement:
    """e^(A+) [diag(lam)] f^(A-) in S(n, |lam|) for zero-diagonal A."""
    n = A.n
    r = sum(lam)
    lam = PeriodicVector(lam)
    ys: Terms = {}
    for mu in compositions(n, r):
        ys[PeriodicMatrix.diagonal(mu)] = 1
    lower = PeriodicMatrix(n, [e for e in A.off if e[0] > e[1]])
    upper = PeriodicMatrix(n, [e for e in A.off if e[0] < e[1]])
    cur = SCHUR_CHAINS.apply_chain(lower, ys)
    cur = {B: c for B, c in cur.items() if tuple(B.ro()) == tuple(lam)}
    cur = SCHUR_CHAINS.apply_chain(upper, cur)
    return SchurElement(cur, n=n, r=r, ring=ring)


def mul(x: SchurElement, y: SchurElement, strategy: str = "formula") -> SchurElement:
    if x.n != y.n or x.r != y.r or x.ring != y.ring:
        raise ValueError("factors live in different Schur algebras")
    if strategy == "formula":
        terms = SCHUR_CHAINS.multiply(x.terms, y.terms)
    elif strategy == "oracle":
        from .afweyl import oracle_mul

        terms: Terms = {}
        for A, a in x.terms.items():
            for C, c in y.terms.items():
                for D, v in oracle_mul(A, C).terms.items():
                    terms[D] = terms.get(D, 0) + a * c * v
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return SchurElement(terms, n=x.n, r=x.r, ring=x.ring, check=False)


# ---------------------------------------------------------------------------
# derived elements


def _zero_diag(A: PeriodicMatrix):
    if not A.is_zero_diag():
        raise ValueError(f"{A} must have zero diagonal")


def bracket(A: PeriodicMatrix, jvec: Sequence[int], r: int, ring: Ring = ZZ) -> SchurElement:
    """A[j, r] = sum over mu in Lambda(n, r - sigma(A)) of mu^j [A + diag(mu)]."""
    _zero_diag(A)
    if not A.is_nonneg_offdiag():
        return SchurElement({}, n=A.n, r=r, ring=ring)
    terms = {}
    for mu in compositions(A.n, r - A.sigma()):
        terms[A.with_diag(mu)] = prod(m ** e for m, e in zip(mu, jvec))
    return SchurElement(terms, n=A.n, r=r, ring=ring)


def brace(A: PeriodicMatrix, lam: Sequence[int], r: int, ring: Ring = ZZ) -> SchurElement:
    """A<lam, r> = sum over mu of binom(mu, lam) [A + diag(mu)]; 0 if A has a
    negative off-diagonal entry."""
    _zero_diag(A)
    if not A.is_nonneg_offdiag():
        return SchurElement({}, n=A.n, r=r, ring=ring)
    terms = {}
    for mu in compositions(A.n, r - A.sigma()):
        terms[A.with_diag(mu)] = vec_binom(mu, lam)
    return SchurElement(terms, n=A.n, r=r, ring=ring)


def double_bracket(A: PeriodicMatrix, residues: Sequence[int], r: int, q: int,
                   ring: Ring = ZZ) -> SchurElement:
    """[[A + diag(lam-bar), r]]: the sum of [A + diag(mu)] over mu in
    Lambda(n, r - sigma(A)) with mu = lam mod q."""
    _zero_diag(A)
    res = tuple(x % q for x in residues)
    terms = {}
    for mu in compositions(A.n, r - A.sigma()):
        if tuple(m % q for m in mu) == res:
            terms[A.with_diag(mu)] = 1
    return SchurElement(terms, n=A.n, r=r, ring=ring)


def build_element(kind: str, A: PeriodicMatrix, data, r: int, q: Optional[int] = None,
                  ring: Ring = ZZ) -> SchurElement:
    if kind == "bracket":
        return bracket(A, data, r, ring)
    if kind == "brace":
        return brace(A, data, r, ring)
    if kind == "double_bracket":
        if q is None:
            raise ValueError("double_bracket needs p^h")
        return double_bracket(A, data, r, q, ring)
    raise ValueError(f"unknown element kind {kind!r}")
