"""Characteristic p: the hyperalgebra over F_p, its level-h subalgebras and
their images in affine Schur algebras.

Everything infinite is cut down by a column window W: an off-diagonal entry
(i, j) is allowed only when 0 < |j - i| <= W.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple

from .core import (PeriodicMatrix, box, compositions, gbinom, leq_weights, unit_vector, vsub,
                   window_slots)
from .hyper import (HyperElement, Index, _expansion, _is_lower, gen_terms,
                    hmul_terms, index, to_B)
from .rings import GF, ZZ, PrimeField, _is_prime
from .schur import SCHUR_CHAINS, SchurElement, brace, double_bracket

BASIS_KINDS = {"B_h": "B", "M_h": "M", "C_h": "C", "G_h": "G", "M_h^0": "M"}
LITTLE_KINDS = ("P_hr", "B_hr", "M_hr", "P'_hr", "M'_hr")


@dataclass(frozen=True)
class ModPContext:
    p: int
    h: int = 1

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.h < 1:
            raise ValueError("level h must be >= 1")

    @property
    def q(self) -> int:
        return self.p ** self.h

    @property
    def field(self) -> PrimeField:
        return GF(self.p)

    def residues(self, lam: Sequence[int]) -> Tuple[int, ...]:
        return tuple(x % self.q for x in lam)


# ---------------------------------------------------------------------------
# base change


def reduce(x, p: int):
    """Reduce the coefficients of an integral element mod p."""
    return x.change_ring(GF(p))


def binomial_periodicity_failures(p: int, h: int) -> List[Tuple[int, int]]:
    """Pairs (t, s) violating binom(t + p^h, s) = binom(t, s) in F_p, over
    t in [-2p^h, 2p^h], 0 <= s < p^h.  Empty when the identity holds."""
    q = p ** h
    return [(t, s) for t in range(-2 * q, 2 * q + 1) for s in range(q)
            if (gbinom(t + q, s) - gbinom(t, s)) % p]


def binomial_vanishing_failures(p: int, h: int) -> List[Tuple[int, int]]:
    """Pairs (a, b), 0 <= a, b < p^h, a + b >= p^h, with binom(a+b, a) != 0 mod p."""
    q = p ** h
    return [(a, b) for a in range(q) for b in range(q)
            if a + b >= q and gbinom(a + b, a) % p]


def _index_in_level(key: Index, q: int) -> bool:
    A, lam = key
    return A.entry_bounded(q) and all(0 <= x < q for x in lam)


def membership_h(x: HyperElement, ctx: ModPContext) -> bool:
    """Whether x lies in the level-h subalgebra (support test in basis B)."""
    if x.basis != "B":
        x = to_B(x)
    return all(_index_in_level(key, ctx.q) for key in x.terms)


# ---------------------------------------------------------------------------
# windowed bases


def level_matrices(n: int, q: int, window: int, sign: int = 0) -> Iterator[PeriodicMatrix]:
    """Zero-diagonal matrices with entries in [0, q) on the window slots."""
    slots = [(i, j) for i, j in window_slots(n, window) if sign == 0 or (j - i) * sign > 0]
    for vals in itertools.product(range(q), repeat=len(slots)):
        yield PeriodicMatrix(n, [(i, j, a) for (i, j), a in zip(slots, vals) if a])


def level_indices(n: int, ctx: ModPContext, window: int) -> List[Index]:
    return [index(A, lam) for A in level_matrices(n, ctx.q, window)
            for lam in box(n, ctx.q)]


def basis_size(n: int, ctx: ModPContext, window: int) -> int:
    return ctx.q ** (len(window_slots(n, window)) + n)


def enumerate_basis(kind: str, ctx: ModPContext, n: int, window: int) -> List[HyperElement]:
    """Windowed elements of one of the bases of the level-h subalgebra.

    Each element is returned as a single index in its own basis (tag M, C,
    G or B); use :func:`affschur.hyper.to_B` to expand it.
    """
    if kind not in BASIS_KINDS:
        raise ValueError(f"unknown basis kind {kind!r}")
    if window < 0:
        raise ValueError("window must be >= 0")
    tag = BASIS_KINDS[kind]
    if kind == "M_h^0":
        keys = [index(PeriodicMatrix.zero(n), lam) for lam in box(n, ctx.q)]
    else:
        keys = level_indices(n, ctx, window)
    return [HyperElement({key: 1}, n=n, ring=ctx.field, basis=tag) for key in keys]


def expansion_mod_p(tag: str, key: Index, p: int) -> Dict[Index, int]:
    return {w: v % p for w, v in _expansion(tag, key).items() if v % p}


def conversion_report(tag: str, ctx: ModPContext, n: int, window: int) -> Dict[str, int]:
    """Check that basis ``tag`` is unitriangular against B over F_p and stays
    inside the level-h span.  Returns failure counts."""
    bad_lead = bad_order = outside = 0
    for key in level_indices(n, ctx, window):
        exp = expansion_mod_p(tag, key, ctx.p)
        if exp.get(key) != 1:
            bad_lead += 1
        for w in exp:
            if w != key and not _is_lower(w, key):
                bad_order += 1
            if not _index_in_level(w, ctx.q):
                outside += 1
    return {"leading": bad_lead, "order": bad_order, "outside": outside}


def closure_report(ctx: ModPContext, n: int, window: int) -> Dict[str, int]:
    """Generators (k E_ij){0} and H-binomials with indices < p^h times every
    windowed basis element: count products leaving the level-h span."""
    q, p = ctx.q, ctx.p
    keys = level_indices(n, ctx, window)
    gens = [(k, i, j) for k in range(1, q) for i, j in window_slots(n, window)]
    out = {"generator_products": 0, "generator_escapes": 0, "h_products": 0, "h_escapes": 0}
    for A, lam in keys:
        for k, i, j in gens:
            out["generator_products"] += 1
            for w, v in gen_terms(k, i, j, A, lam).items():
                if v % p and not _index_in_level(w, q):
                    out["generator_escapes"] += 1
        for mu in box(n, q):
            out["h_products"] += 1
            for w, v in hmul_terms(mu, A, lam).items():
                if v % p and not _index_in_level(w, q):
                    out["h_escapes"] += 1
    return out


def zero_part_report(ctx: ModPContext, n: int) -> int:
    """(H_i over t')(H_i over t) for t, t' < p^h: count escaping terms."""
    q, p = ctx.q, ctx.p
    bad = 0
    zero = PeriodicMatrix.zero(n)
    for i in range(1, n + 1):
        for t in range(q):
            for t2 in range(q):
                terms = hmul_terms(unit_vector(n, i, t2), zero, unit_vector(n, i, t))
                bad += sum(1 for w, v in terms.items() if v % p and not _index_in_level(w, q))
    return bad


# ---------------------------------------------------------------------------
# evaluation maps


def xi_rk(x: HyperElement, r: int) -> SchurElement:
    """A{lam} -> A{lam, r} over the coefficient field of x."""
    from .hyper import evaluate_xi

    return evaluate_xi(x, r)


def evaluation_matrix(family: Sequence[Index], r: int) -> Tuple[List[PeriodicMatrix], List[List[int]]]:
    """Rows: family members; columns: basis [B] of S(n, r) hit by some A{lam, r}."""
    rows = []
    cols: Dict[PeriodicMatrix, int] = {}
    for A, lam in family:
        terms = brace(A, lam, r).terms if A.sigma() <= r else {}
        rows.append(terms)
        for B in terms:
            cols.setdefault(B, len(cols))
    order = sorted(cols, key=lambda B: B.sort_key())
    return order, [[t.get(B, 0) for B in order] for t in rows]


def rank_mod_p(rows: List[List[int]], p: int) -> int:
    """Rank over F_p by row reduction."""
    m = [[x % p for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def independence_check(family: Sequence[Index], ctx: ModPContext) -> bool:
    """Whether the sequences (A{lam, r})_r for the family are independent over F_p.

    The evaluations at every degree r = 0..R are stacked side by side, where
    R = max(sigma(A) + |lam|); degree sigma(A) + |lam| is where A{lam} first
    shows its leading term [A + diag(lam)].
    """
    family = [(A, tuple(lam)) for A, lam in family]
    if len(set(family)) != len(family):
        raise ValueError("family members must be distinct")
    if not family:
        return True
    R = max(A.sigma() + sum(lam) for A, lam in family)
    rows: List[List[int]] = [[] for _ in family]
    for r in range(R + 1):
        _, block = evaluation_matrix(family, r)
        for row, part in zip(rows, block):
            row.extend(part)
    return rank_mod_p(rows, ctx.p) == len(family)


# ---------------------------------------------------------------------------
# little and infinitesimal affine Schur algebras


def _schur_matrices(n: int, q: int, r: int, window: int) -> List[PeriodicMatrix]:
    return [A for A in level_matrices(n, q, window) if A.sigma() <= r]


def class_symbol(A: PeriodicMatrix, residues: Sequence[int], r: int, ctx: ModPContext) -> SchurElement:
    return double_bracket(A, residues, r, ctx.q, ctx.field)


def monomial_class(A: PeriodicMatrix, diagonals: Sequence[Sequence[int]], ring) -> Dict[PeriodicMatrix, int]:
    """e^(A+) (sum of [diag(mu)]) f^(A-) for A zero-diagonal, as a term map."""
    n = A.n
    upper = PeriodicMatrix(n, [e for e in A.off if e[0] < e[1]])
    lower = PeriodicMatrix(n, [e for e in A.off if e[0] > e[1]])
    targets = {tuple(mu) for mu in diagonals}
    r = sum(next(iter(targets))) if targets else 0
    ys = {PeriodicMatrix.diagonal(mu): 1 for mu in compositions(n, r)}
    cur = SCHUR_CHAINS.apply_chain(lower, ys)
    cur = {B: c for B, c in cur.items() if tuple(B.ro()) in targets}
    return SCHUR_CHAINS.apply_chain(upper, cur)


def little_inf_basis(kind: str, r: int, ctx: ModPContext, n: int, window: int) -> List[SchurElement]:
    """Windowed basis lists of the little (P, B, M) and infinitesimal
    (P', M') affine Schur algebras in degree r."""
    if kind not in LITTLE_KINDS:
        raise ValueError(f"unknown basis kind {kind!r}")
    return [el for _, el in little_inf_indexed(kind, r, ctx, n, window)]


def little_inf_indexed(kind: str, r: int, ctx: ModPContext, n: int, window: int):
    """Pairs (label, element); label is (A, diagonal data) for the element."""
    q, F = ctx.q, ctx.field
    out = []
    for A in _schur_matrices(n, q, r, window):
        s = A.sigma()
        weights = compositions(n, r - s)
        if kind in ("P_hr", "B_hr"):
            classes = sorted({ctx.residues(mu) for mu in weights})
            for res in classes:
                if kind == "P_hr":
                    el = class_symbol(A, res, r, ctx)
                else:
                    el = brace(A, res, r, F)
                out.append(((A, res), el))
        elif kind == "P'_hr":
            for mu in weights:
                out.append(((A, mu), SchurElement({A.with_diag(mu): 1}, n=n, r=r, ring=F)))
        else:
            sb = A.sigma_bold()
            full = [lam for lam in compositions(n, r) if leq_weights(sb, lam)]
            if kind == "M'_hr":
                for lam in full:
                    terms = monomial_class(A, [lam], ZZ)
                    out.append(((A, lam), SchurElement(terms, n=n, r=r, ring=F)))
            else:
                seen = {}
                for lam in full:
                    seen.setdefault(ctx.residues(lam), []).append(lam)
                for res, reps in sorted(seen.items()):
                    diagonals = [mu for mu in compositions(n, r) if ctx.residues(mu) == res]
                    terms = monomial_class(A, diagonals, ZZ)
                    out.append(((A, reps[0]), SchurElement(terms, n=n, r=r, ring=F)))
    return out


def _sigma_lower(B: PeriodicMatrix, A: PeriodicMatrix) -> bool:
    return B.offdiag().sigma() < A.sigma()


def little_triangularity_report(r: int, ctx: ModPContext, n: int, window: int) -> Dict[str, int]:
    """M-type elements against P-type: unit leading coefficient on the
    expected symbol, every other term strictly lower in sigma, and (for the
    little algebra) the remainder constant on p^h-classes of diagonals."""
    report = {"checked": 0, "leading": 0, "order": 0, "classes": 0}
    for (A, lam), el in little_inf_indexed("M'_hr", r, ctx, n, window):
        report["checked"] += 1
        lead = A.with_diag(vsub(lam, A.sigma_bold()))
        if el.terms.get(lead) != 1:
            report["leading"] += 1
        report["order"] += sum(1 for B in el.terms if B != lead and not _sigma_lower(B, A))
    for (A, lam), el in little_inf_indexed("M_hr", r, ctx, n, window):
        report["checked"] += 1
        res = ctx.residues(vsub(lam, A.sigma_bold()))
        cls: Dict[Tuple, set] = {}
        for B, c in el.terms.items():
            key = (B.offdiag(), ctx.residues(B.diag))
            cls.setdefault(key, set()).add(c)
        for mu in compositions(n, r - A.sigma()):
            if ctx.residues(mu) == res and el.terms.get(A.with_diag(mu)) != 1:
                report["leading"] += 1
        for (B, bres), coeffs in cls.items():
            if B != A and not B.sigma() < A.sigma():
                report["order"] += 1
            full = [mu for mu in compositions(n, r - B.sigma()) if ctx.residues(mu) == bres]
            if len(coeffs) != 1 or sum(1 for mu in full if B.with_diag(mu) in el.terms) != len(full):
                report["classes"] += 1
    return report
