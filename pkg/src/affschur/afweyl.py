"""The extended affine symmetric group and the convolution oracle.

An :class:`AffinePermutation` of degree ``r`` is a bijection ``w`` of ``Z``
with ``w(i + r) = w(i) + r``, stored by its window ``(w(1), ..., w(r))``.

For a composition ``lam`` of ``r`` into ``n`` parts the integers are cut into
consecutive blocks ``R^lam_{i + k n}`` (block ``i`` of period ``k``).  The map
:func:`jmath` sends a triple ``(lam, d, mu)`` to the periodic matrix counting
``|R^lam_k  ∩  d R^mu_l|``; :func:`jmath_inverse` undoes it.

:func:`oracle_mul` multiplies two standard basis elements of the affine Schur
algebra by literally convolving double coset sums in the group algebra.  It
shares no code with the closed multiplication formulas and is used to check
them.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

from .core import PeriodicMatrix, PeriodicVector


class AffinePermutation:
    __slots__ = ("r", "window")

    def __init__(self, window: Sequence[int]):
        window = tuple(int(x) for x in window)
        r = len(window)
        if r == 0:
            raise ValueError("degree must be positive")
        if len({x % r for x in window}) != r:
            raise ValueError(f"{window} is not the window of an affine permutation")
        self.r = r
        self.window = window

    @classmethod
    def identity(cls, r: int) -> "AffinePermutation":
        return cls(range(1, r + 1))

    @classmethod
    def transposition(cls, r: int, p: int) -> "AffinePermutation":
        w = list(range(1, r + 1))
        w[p - 1], w[p] = w[p], w[p - 1]
        return cls(w)

    def __call__(self, i: int) -> int:
        s, i0 = divmod(i - 1, self.r)
        return self.window[i0] + s * self.r

    def __mul__(self, other: "AffinePermutation") -> "AffinePermutation":
        return compose(self, other)

    def inverse(self) -> "AffinePermutation":
        return invert(self)

    def __eq__(self, other):
        return isinstance(other, AffinePermutation) and self.window == other.window

    def __hash__(self):
        return hash(self.window)

    def __repr__(self):
        return f"AffinePermutation({list(self.window)})"


def _ev(w: Tuple[int, ...], r: int, i: int) -> int:
    s, i0 = divmod(i - 1, r)
    return w[i0] + s * r


def _compose(x: Tuple[int, ...], y: Tuple[int, ...], r: int) -> Tuple[int, ...]:
    out = []
    for v in y:
        s, v0 = divmod(v - 1, r)
        out.append(x[v0] + s * r)
    return tuple(out)


def _invert(w: Tuple[int, ...], r: int) -> Tuple[int, ...]:
    out = [0] * r
    for i, v in enumerate(w, start=1):
        s, v0 = divmod(v - 1, r)
        out[v0] = i - s * r
    return tuple(out)


def compose(x: AffinePermutation, y: AffinePermutation) -> AffinePermutation:
    """(x ∘ y)(i) = x(y(i))."""
    if x.r != y.r:
        raise ValueError(f"degree mismatch: {x.r} vs {y.r}")
    return AffinePermutation(_compose(x.window, y.window, x.r))


def invert(w: AffinePermutation) -> AffinePermutation:
    return AffinePermutation(_invert(w.window, w.r))


def group_op(x: AffinePermutation, y: AffinePermutation | None = None, kind: str = "compose"):
    if kind == "compose":
        return compose(x, y)
    if kind == "invert":
        return invert(x)
    raise ValueError(f"unknown group operation {kind!r}")


# ---------------------------------------------------------------------------
# composition blocks


class CompositionBlock:
    """The blocks R^lam_{i+kn} attached to a composition ``lam`` of ``r``."""

    def __init__(self, lam: Sequence[int]):
        self.lam = PeriodicVector(lam)
        if any(x < 0 for x in self.lam):
            raise ValueError(f"{lam} has a negative part")
        self.n = len(self.lam)
        self.r = sum(self.lam)
        cum = [0]
        for x in self.lam:
            cum.append(cum[-1] + x)
        self.cum = tuple(cum)
        owner = []
        for i, x in enumerate(self.lam, start=1):
            owner.extend([i] * x)
        self._owner = tuple(owner)

    def block_of(self, p: int) -> int:
        """The k with p in R^lam_k."""
        s, p0 = divmod(p - 1, self.r)
        return self._owner[p0] + s * self.n

    def block(self, k: int) -> range:
        s, i0 = divmod(k - 1, self.n)
        start = s * self.r + self.cum[i0]
        return range(start + 1, start + self.lam[i0] + 1)

    def __repr__(self):
        return f"CompositionBlock({tuple(self.lam)})"


@lru_cache(maxsize=4096)
def blocks(lam: Tuple[int, ...]) -> CompositionBlock:
    return CompositionBlock(lam)


def _increasing_on_blocks(w: Tuple[int, ...], r: int, cb: CompositionBlock) -> bool:
    for i in range(1, cb.n + 1):
        lo, hi = cb.cum[i - 1], cb.cum[i]
        for p in range(lo + 1, hi):
            if w[p - 1] >= w[p]:
                return False
    return True


def is_minimal_rep(d: AffinePermutation, lam: Sequence[int]) -> bool:
    """True iff ``d`` is increasing on every block R^lam_i, 1 <= i <= n."""
    cb = blocks(tuple(lam))
    if cb.r != d.r:
        raise ValueError(f"composition {tuple(lam)} does not have size {d.r}")
    return _increasing_on_blocks(d.window, d.r, cb)


def is_double_coset_rep(lam, d: AffinePermutation, mu) -> bool:
    return is_minimal_rep(d, mu) and is_minimal_rep(invert(d), lam)


# ---------------------------------------------------------------------------
# the bijection j_Δ


def _block_matrix(cl: CompositionBlock, w: Tuple[int, ...], r: int, cm: CompositionBlock, n: int):
    entries: Dict[Tuple[int, int], int] = {}
    for p in range(1, r + 1):
        key = (cl.block_of(_ev(w, r, p)), cm.block_of(p))
        entries[key] = entries.get(key, 0) + 1
    return PeriodicMatrix.from_entries(n, entries)


def matrix_of(lam, w: AffinePermutation, mu) -> PeriodicMatrix:
    """(|R^lam_k ∩ w R^mu_l|)_{k,l}; constant on the double coset S_lam w S_mu."""
    cl, cm = blocks(tuple(lam)), blocks(tuple(mu))
    if cl.n != cm.n or cl.r != w.r or cm.r != w.r:
        raise ValueError("incompatible compositions and permutation")
    return _block_matrix(cl, w.window, w.r, cm, cl.n)


def jmath(lam, d: AffinePermutation, mu) -> PeriodicMatrix:
    if not is_double_coset_rep(lam, d, mu):
        raise ValueError(f"{d} is not a minimal ({tuple(lam)}, {tuple(mu)}) double coset representative")
    return matrix_of(lam, d, mu)


def jmath_inverse(A: PeriodicMatrix):
    """(lam, d, mu) with jmath(lam, d, mu) = A, d the canonical filling."""
    if not A.in_theta():
        raise ValueError(f"{A} is not a nonnegative periodic matrix")
    r = A.sigma()
    if r == 0:
        raise ValueError("degree 0 has no permutations")
    lam, mu = A.ro(), A.co()
    d = _filling(A, r)
    return lam, AffinePermutation(d), mu


@lru_cache(maxsize=1 << 16)
def _filling(A: PeriodicMatrix, r: int) -> Tuple[int, ...]:
    n = A.n
    cl, cm = blocks(tuple(A.ro())), blocks(tuple(A.co()))
    rows: Dict[int, List[Tuple[int, int]]] = {i: [] for i in range(1, n + 1)}
    cols: Dict[int, List[Tuple[int, int]]] = {l: [] for l in range(1, n + 1)}
    for i in range(1, n + 1):
        for j, a in A.row(i).items():
            rows[i].append((j, a))
            s, l0 = divmod(j - 1, n)
            cols[l0 + 1].append((i - s * n, a))
    offset: Dict[Tuple[int, int], int] = {}
    for i, entries in rows.items():
        acc = 0
        for j, a in sorted(entries):
            offset[(i, j)] = acc
            acc += a
    window = [0] * r
    for l, entries in cols.items():
        p = cm.cum[l - 1]
        for k, a in sorted(entries):
            s, k0 = divmod(k - 1, n)
            start = s * r + cl.cum[k0] + offset[(k0 + 1, l - s * n)]
            for t in range(a):
                window[p + t] = start + t + 1
            p += a
    return tuple(window)


def u_perm(lam: Sequence[int], a: int, m: int, h: int, k: int) -> AffinePermutation:
    """The permutation u^lam_{a,m,h,k} (four cases by the signs of h - a and m).

    With ``j = a + m n`` this is the minimal representative attached to
    ``k E_{h,j} + diag(lam - k e_j)``.
    """
    lam = tuple(lam)
    r = sum(lam)
    c = blocks(lam).cum  # c[i] = lam_1 + ... + lam_i
    if h < a and m >= 0:
        top = list(range(c[h] + 1, c[a - 1] + k + 1))
        bot = list(range(c[h] + 1 + k, c[a - 1] + k + 1)) + \
            list(range(c[h] - m * r + 1, c[h] - m * r + k + 1))
    elif h <= a and m < 0:
        top = list(range(c[h - 1] + 1, c[a] + 1))
        bot = list(range(c[h - 1] + 1 + k, c[a] + 1)) + \
            list(range(c[h - 1] - m * r + 1, c[h - 1] - m * r + k + 1))
    elif h >= a and m > 0:
        top = list(range(c[a - 1] + 1, c[h] + 1))
        bot = list(range(c[h] - m * r - k + 1, c[h] - m * r + 1)) + \
            list(range(c[a - 1] + 1, c[h] - k + 1))
    elif h > a and m <= 0:
        top = list(range(c[a] - k + 1, c[h - 1] + 1))
        bot = list(range(c[h - 1] - m * r - k + 1, c[h - 1] - m * r + 1)) + \
            list(range(c[a] + 1 - k, c[h - 1] - k + 1))
    else:
        raise ValueError("j must differ from h")
    if len(top) != len(bot):
        raise ValueError("malformed two-row notation")
    w = list(range(1, r + 1))
    for s, t in zip(top, bot):
        w[s - 1] = t
    return AffinePermutation(w)


# ---------------------------------------------------------------------------
# Young subgroups and double cosets


@lru_cache(maxsize=4096)
def _young(lam: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    cb = blocks(lam)
    pieces = []
    for i in range(1, cb.n + 1):
        rng = list(range(cb.cum[i - 1] + 1, cb.cum[i] + 1))
        pieces.append([tuple(pm) for pm in itertools.permutations(rng)])
    out = []
    for choice in itertools.product(*pieces):
        w = []
        for part in choice:
            w.extend(part)
        out.append(tuple(w))
    return tuple(out)


def young_subgroup(lam: Sequence[int]) -> List[AffinePermutation]:
    return [AffinePermutation(w) for w in _young(tuple(lam))]


def _generators(lam: Tuple[int, ...]) -> List[Tuple[int, ...]]:
    cb = blocks(lam)
    r = cb.r
    gens = []
    for p in range(1, r):
        if cb.block_of(p) == cb.block_of(p + 1):
            gens.append(AffinePermutation.transposition(r, p).window)
    return gens


@lru_cache(maxsize=1 << 14)
def _double_coset(lam: Tuple[int, ...], d: Tuple[int, ...], mu: Tuple[int, ...]):
    r = len(d)
    left, right = _generators(lam), _generators(mu)
    seen = {d}
    queue = deque([d])
    while queue:
        w = queue.popleft()
        for s in left:
            x = _compose(s, w, r)
            if x not in seen:
                seen.add(x)
                queue.append(x)
        for s in right:
            x = _compose(w, s, r)
            if x not in seen:
                seen.add(x)
                queue.append(x)
    return frozenset(seen)


def double_coset(lam, d: AffinePermutation, mu) -> set:
    """The finite set S_lam d S_mu, by breadth-first closure."""
    return {AffinePermutation(w) for w in _double_coset(tuple(lam), d.window, tuple(mu))}


def young_intersection(lam, d: AffinePermutation, mu) -> set:
    """S_lam ∩ d S_mu d^{-1}."""
    r = d.r
    inv = _invert(d.window, r)
    smu = set(_young(tuple(mu)))
    out = set()
    for x in _young(tuple(lam)):
        if _compose(_compose(inv, x, r), d.window, r) in smu:
            out.add(AffinePermutation(x))
    return out


def _right_coset_reps(lam: Tuple[int, ...], elements: Iterable[Tuple[int, ...]], r: int):
    """One representative of each coset S_lam x among ``elements``."""
    cb = blocks(lam)
    reps = {}
    for x in elements:
        key = tuple(cb.block_of(v) for v in x)
        reps.setdefault(key, x)
    return list(reps.values())


# ---------------------------------------------------------------------------
# the convolution oracle


def oracle_mul(B: PeriodicMatrix, A: PeriodicMatrix, method: str = "convolve"):
    """[B]_1 · [A]_1 in the affine Schur algebra, from the group algebra.

    ``method="convolve"`` forms the whole group-algebra element
    sum_i (S_lam' d' S_lam) x_i, x_i running over S_lam-coset representatives
    of S_lam d S_mu, and reads off one coefficient per double coset.
    ``method="extract"`` computes only those coefficients: the coefficient of
    g equals #{i : g x_i^{-1} in S_lam' d' S_lam}, and the double cosets that
    can occur are those of d' b d with b in S_lam.
    """
    from .schur import SchurElement

    if not (A.in_theta() and B.in_theta()):
        raise ValueError("oracle_mul needs nonnegative matrices")
    r = A.sigma()
    if B.sigma() != r:
        raise ValueError(f"degree mismatch: {B.sigma()} vs {r}")
    if B.n != A.n:
        raise ValueError("rank mismatch")
    zero = SchurElement({}, n=A.n, r=r)
    if tuple(B.co()) != tuple(A.ro()) or r == 0:
        return zero if r else (SchurElement({A: 1}, n=A.n, r=0) if A == B else zero)
    if method == "convolve":
        terms = _convolve(B, A, r)
    elif method == "extract":
        terms = _extract(B, A, r)
    else:
        raise ValueError(f"unknown oracle method {method!r}")
    return SchurElement(terms, n=A.n, r=r, check=False)


def _convolve(B: PeriodicMatrix, A: PeriodicMatrix, r: int) -> Dict[PeriodicMatrix, int]:
    lam, d, mu = jmath_inverse(A)
    lam2, d2, _ = jmath_inverse(B)
    lam, mu, lam2 = tuple(lam), tuple(mu), tuple(lam2)
    reps = _right_coset_reps(lam, _double_coset(lam, d.window, mu), r)
    left = _double_coset(lam2, d2.window, lam)
    total: Counter = Counter()
    for x in reps:
        for y in left:
            total[_compose(y, x, r)] += 1
    cl, cm = blocks(lam2), blocks(mu)
    out: Dict[PeriodicMatrix, int] = {}
    for g, c in total.items():
        C = _block_matrix(cl, g, r, cm, A.n)
        if C in out:
            continue
        rep = _filling(C, r)
        coeff = total.get(rep, 0)
        if coeff != c:
            raise AssertionError(f"coefficient not constant on the double coset of {C}")
        out[C] = coeff
    return out


def _profile(cl: CompositionBlock, w: Tuple[int, ...], r: int, cm: CompositionBlock):
    counts: Dict[Tuple[int, int], int] = {}
    owner, n = cl._owner, cl.n
    for v, col in zip(w, cm._owner):
        s, v0 = divmod(v - 1, r)
        key = (owner[v0] + s * n, col)
        counts[key] = counts.get(key, 0) + 1
    return tuple(sorted(counts.items()))


def _from_profile(n: int, key) -> PeriodicMatrix:
    table: Dict[Tuple[int, int], int] = {}
    diag = [0] * n
    for (k, l), a in key:
        s = (k - 1) // n
        k, l = k - s * n, l - s * n
        if k == l:
            diag[k - 1] += a
        else:
            table[(k, l)] = table.get((k, l), 0) + a
    return PeriodicMatrix._raw(n, table, diag)


@lru_cache(maxsize=1 << 12)
def _inverse_coset_reps(lam: Tuple[int, ...], d: Tuple[int, ...], mu: Tuple[int, ...]):
    r = len(d)
    reps = _right_coset_reps(lam, (_compose(d, c, r) for c in _young(mu)), r)
    return tuple(_invert(x, r) for x in reps)


@lru_cache(maxsize=1 << 14)
def _left_translates(lam2: Tuple[int, ...], d2: Tuple[int, ...], lam: Tuple[int, ...]):
    """d2 b for b in S_lam, one per left S_lam2-coset."""
    r = len(d2)
    return tuple(_right_coset_reps(lam2, (_compose(d2, b, r) for b in _young(lam)), r))


def _extract(B: PeriodicMatrix, A: PeriodicMatrix, r: int) -> Dict[PeriodicMatrix, int]:
    return extract_terms(_filling_data(B, r), _filling_data(A, r), A.n, r)


@lru_cache(maxsize=1 << 16)
def _filling_data(A: PeriodicMatrix, r: int):
    return tuple(A.ro()), _filling(A, r), tuple(A.co())


def extract_terms(left_data, right_data, n: int, r: int) -> Dict[PeriodicMatrix, int]:
    """Structure constants of [B][A] from (ro, filling, co) of B and of A."""
    lam2, d2, _ = left_data
    lam, d, mu = right_data
    cl2, cm = blocks(lam2), blocks(mu)
    left = _double_coset(lam2, d2, lam)
    inv_reps = _inverse_coset_reps(lam, d, mu)
    candidates: Dict[tuple, Tuple[int, ...]] = {}
    for y in _left_translates(lam2, d2, lam):
        g = _compose(y, d, r)
        candidates.setdefault(_profile(cl2, g, r, cm), g)
    out = {}
    for key, g in candidates.items():
        c = sum(1 for xi in inv_reps if _compose(g, xi, r) in left)
        if c:
            out[_from_profile(n, key)] = c
    return out
