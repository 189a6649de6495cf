"""The stabilized algebra K(n) and its level-h pieces.

K(n) has basis [A] for periodic matrices A with nonnegative off-diagonal
entries and arbitrary integer diagonal.  Products of a generator
[k E_ij + diag(ro(A) - k e_j)] with [A] follow the Schur-algebra formula
with row j's diagonal left unconstrained; general products are obtained
from these by the same triangular rewriting used for Schur algebras.  This
is a construction: associativity and compatibility with S(n, r) are checked
by the test-suite rather than assumed.
"""

from __future__ import annotations

import itertools
from typing import Dict, Sequence, Tuple

from .core import PeriodicMatrix, box, vadd, vec_binom, vsub
from .hyper import HyperElement, to_B
from .linear import LinearCombination
from .modp import ModPContext, membership_h
from .rings import ZZ, Ring
from .schur import ChainMultiplier, SchurElement, generator_terms

Terms = Dict[PeriodicMatrix, int]
ClassIndex = Tuple[PeriodicMatrix, Tuple[int, ...]]


class KElement(LinearCombination):
    """A finite combination of [A], A with nonnegative off-diagonal part."""

    __slots__ = ("n",)

    def __init__(self, terms=(), n: int = 2, ring: Ring = ZZ, check: bool = True):
        super().__init__(terms, ring)
        self.n = n
        if check:
            for A in self.terms:
                if A.n != n or not A.is_nonneg_offdiag():
                    raise ValueError(f"{A} is not a valid index of K({n})")

    def _copy_meta(self, other):
        self.n = other.n

    def _meta_eq(self, other):
        return self.n == other.n

    @staticmethod
    def index_sort_key(A):
        return (A.offdiag_sigma(), A.sort_key())

    def format_index(self, A):
        return f"[{A!r}]"

    def __mul__(self, other):
        if isinstance(other, KElement):
            return k_mul(self, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))


def k_element(A: PeriodicMatrix, ring: Ring = ZZ) -> KElement:
    return KElement({A: 1}, n=A.n, ring=ring)


def _k_gen(k: int, i: int, j: int, C: PeriodicMatrix) -> Terms:
    return generator_terms(k, i, j, C, skip_j=True)


K_CHAINS = ChainMultiplier(_k_gen)


def k_gen_mul(k: int, i: int, j: int, A: PeriodicMatrix, ring: Ring = ZZ) -> KElement:
    """[k E_ij + diag(ro(A) - k e_j)] · [A] in K(n)."""
    if not A.is_nonneg_offdiag():
        raise ValueError(f"{A} has a negative off-diagonal entry")
    return KElement(_k_gen(k, i, j, A), n=A.n, ring=ring, check=False)


def k_mul(x: KElement, y: KElement) -> KElement:
    if x.n != y.n or x.ring != y.ring:
        raise ValueError("factors live in different algebras")
    return KElement(K_CHAINS.multiply(x.terms, y.terms), n=x.n, ring=x.ring, check=False)


def restrict_to_schur(x: KElement, r: int) -> SchurElement:
    """Keep the terms [A] with A in Theta(n, r); drop the rest."""
    terms = {A: c for A, c in x.terms.items() if A.in_theta(r)}
    return SchurElement(terms, n=x.n, r=r, ring=x.ring, check=False)


def tau(lam: Sequence[int], x: KElement, q: int) -> KElement:
    """[A] -> [A + q diag(lam)]."""
    shift = [q * v for v in lam]
    return KElement({A.with_diag(vadd(A.diag, shift)): c for A, c in x.terms.items()},
                    n=x.n, ring=x.ring, check=False)


def in_level(x: KElement, q: int) -> bool:
    return all(A.entry_bounded(q) for A in x.terms)


# ---------------------------------------------------------------------------
# diagonals mod p^h


def _residue_profile(A: PeriodicMatrix, res: Sequence[int], q: int, side: str):
    prof = A.ro() if side == "ro" else A.co()
    return tuple(v % q for v in vadd(prof, res))


class KBarElement(LinearCombination):
    """Combination of [A + diag(res)], A zero-diagonal with entries < p^h and
    res a vector of residues mod p^h."""

    __slots__ = ("n", "ctx")

    def __init__(self, terms=(), n: int = 2, ctx: ModPContext = None, check: bool = True):
        if ctx is None:
            raise ValueError("a ModPContext is required")
        super().__init__(terms, ctx.field)
        self.n, self.ctx = n, ctx
        if check:
            for A, res in self.terms:
                if not (A.is_zero_diag() and A.is_nonneg_offdiag() and A.entry_bounded(ctx.q)):
                    raise ValueError(f"{A} is not a level-{ctx.h} off-diagonal part")
                if len(res) != n or any(not 0 <= v < ctx.q for v in res):
                    raise ValueError(f"{res} is not a residue vector mod {ctx.q}")

    def _copy_meta(self, other):
        self.n, self.ctx = other.n, other.ctx

    def _meta_eq(self, other):
        return self.n == other.n and self.ctx == other.ctx

    @staticmethod
    def index_sort_key(key):
        A, res = key
        return (A.sigma(), A.sort_key(), res)

    def format_index(self, key):
        A, res = key
        return f"[{A.with_diag(res)!r}]"

    def __mul__(self, other):
        if isinstance(other, KBarElement):
            return kbar_mul(self, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.ctx, frozenset(self.terms.items())))


def kbar_index(A: PeriodicMatrix, res: Sequence[int], q: int) -> ClassIndex:
    return (A.offdiag(), tuple(v % q for v in res))


def project(terms: Terms, q: int) -> Dict[ClassIndex, int]:
    out: Dict[ClassIndex, int] = {}
    for C, c in terms.items():
        key = kbar_index(C, C.diag, q)
        out[key] = out.get(key, 0) + c
    return out


def lift_pair(B: PeriodicMatrix, mu: Sequence[int], A: PeriodicMatrix, lam: Sequence[int],
              q: int, adjust: str = "left"):
    """Integer diagonals beta = mu, alpha = lam mod q (entries lifted into
    [0, q)) with co(B + diag beta) = ro(A + diag alpha); the factor named by
    ``adjust`` absorbs the difference.  None when the residues disagree."""
    beta = [v % q for v in mu]
    alpha = [v % q for v in lam]
    d = vsub(vadd(A.ro(), alpha), vadd(B.co(), beta))
    if any(v % q for v in d):
        return None
    if adjust == "left":
        beta = vadd(beta, d)
    else:
        alpha = vsub(alpha, d)
    return B.with_diag(beta), A.with_diag(alpha)


def kbar_basis_product(left: ClassIndex, right: ClassIndex, q: int, shift: Sequence[int] = None) -> Dict[ClassIndex, int]:
    B, mu = left
    A, lam = right
    lifts = lift_pair(B, mu, A, lam, q, "left")
    if lifts is None:
        return {}
    Bt, At = lifts
    if shift is not None:
        s = [q * v for v in shift]
        Bt, At = Bt.with_diag(vadd(Bt.diag, s)), At.with_diag(vadd(At.diag, s))
    return project(K_CHAINS.basis_product(Bt, At), q)


def kbar_mul(x: KBarElement, y: KBarElement, shift: Sequence[int] = None) -> KBarElement:
    """Product in the quotient algebra: lift, multiply in K, project.

    ``shift`` moves both lifts by q diag(shift); the result must not change.
    """
    if x.n != y.n or x.ctx != y.ctx:
        raise ValueError("factors live in different algebras")
    q = x.ctx.q
    acc: Dict[ClassIndex, int] = {}
    for kx, a in x.terms.items():
        for ky, b in y.terms.items():
            for w, v in kbar_basis_product(kx, ky, q, shift).items():
                acc[w] = acc.get(w, 0) + a * b * v
    return KBarElement(acc, n=x.n, ctx=x.ctx, check=False)


def kbar_element(A: PeriodicMatrix, res: Sequence[int], ctx: ModPContext) -> KBarElement:
    return KBarElement({kbar_index(A, res, ctx.q): 1}, n=A.n, ctx=ctx)


def kbar_unit(n: int, ctx: ModPContext) -> KBarElement:
    return KBarElement({(PeriodicMatrix.zero(n), mu): 1 for mu in box(n, ctx.q)}, n=n, ctx=ctx)


# ---------------------------------------------------------------------------
# realization maps


def phi_h(x: HyperElement, ctx: ModPContext) -> KBarElement:
    """A{lam} -> sum over mu in [0, q)^n of binom(mu, lam) [A + diag(mu mod q)]."""
    if x.basis != "B":
        x = to_B(x)
    if not membership_h(x, ctx):
        raise ValueError("element is not in the level-h subalgebra")
    acc: Dict[ClassIndex, int] = {}
    for (A, lam), c in x.terms.items():
        for mu in box(x.n, ctx.q):
            v = vec_binom(mu, lam)
            if v:
                key = (A, mu)
                acc[key] = acc.get(key, 0) + c * v
    return KBarElement(acc, n=x.n, ctx=ctx, check=False)


class KHatClassElement(LinearCombination):
    """Finite combination of class symbols [[A + diag(res)]], each standing for
    the sum of [A + diag(nu)] over all nu = res mod q.  Symbols are never
    expanded."""

    __slots__ = ("n", "ctx")

    def __init__(self, terms=(), n: int = 2, ctx: ModPContext = None):
        if ctx is None:
            raise ValueError("a ModPContext is required")
        super().__init__(terms, ctx.field)
        self.n, self.ctx = n, ctx

    def _copy_meta(self, other):
        self.n, self.ctx = other.n, other.ctx

    def _meta_eq(self, other):
        return self.n == other.n and self.ctx == other.ctx

    index_sort_key = staticmethod(KBarElement.index_sort_key)

    def format_index(self, key):
        A, res = key
        return f"[[{A.with_diag(res)!r}]]"

    def __mul__(self, other):
        if isinstance(other, KHatClassElement):
            return khat_mul(self, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.ctx, frozenset(self.terms.items())))

    def coefficient_at(self, C: PeriodicMatrix) -> int:
        """Coefficient of the plain basis element [C] in the formal sum."""
        return self.terms.get(kbar_index(C, C.diag, self.ctx.q), 0)


def psi_h(x: KBarElement) -> KHatClassElement:
    return KHatClassElement(dict(x.terms), n=x.n, ctx=x.ctx)


def khat_mul(x: KHatClassElement, y: KHatClassElement) -> KHatClassElement:
    """Class-symbol product: lift with the right factor absorbing the profile
    difference, multiply once in K, and rebundle each term into its class."""
    if x.n != y.n or x.ctx != y.ctx:
        raise ValueError("factors live in different algebras")
    q = x.ctx.q
    acc: Dict[ClassIndex, int] = {}
    for (B, mu), a in x.terms.items():
        for (A, lam), b in y.terms.items():
            lifts = lift_pair(B, mu, A, lam, q, "right")
            if lifts is None:
                continue
            for w, v in project(K_CHAINS.basis_product(*lifts), q).items():
                acc[w] = acc.get(w, 0) + a * b * v
    return KHatClassElement(acc, n=x.n, ctx=x.ctx)


def zeta_coefficients(x: HyperElement, ctx: ModPContext, radius: int = 2) -> Dict[PeriodicMatrix, int]:
    """zeta(x) = sum over nu in Z^n of binom(nu, lam) [A + diag(nu)], cut to
    diagonals nu in [-radius q, (radius + 1) q)^n, coefficients mod p."""
    if x.basis != "B":
        x = to_B(x)
    q, p = ctx.q, ctx.p
    rng = range(-radius * q, (radius + 1) * q)
    acc: Dict[PeriodicMatrix, int] = {}
    for (A, lam), c in x.terms.items():
        for nu in itertools.product(rng, repeat=x.n):
            v = vec_binom(nu, lam) * c % p
            if v:
                C = A.with_diag(nu)
                acc[C] = (acc.get(C, 0) + v) % p
    return {C: v for C, v in acc.items() if v}


def zeta_consistency(x: HyperElement, ctx: ModPContext, radius: int = 2) -> bool:
    """zeta restricted to the level-h subalgebra equals psi_h after phi_h,
    compared on every diagonal in the sampled box."""
    image = psi_h(phi_h(x, ctx))
    direct = zeta_coefficients(x, ctx, radius)
    q = ctx.q
    rng = range(-radius * q, (radius + 1) * q)
    offs = {A for (A, _) in image.terms} | {C.offdiag() for C in direct}
    for A in offs:
        for nu in itertools.product(rng, repeat=x.n):
            C = A.with_diag(nu)
            if image.coefficient_at(C) % ctx.p != direct.get(C, 0):
                return False
    return True
