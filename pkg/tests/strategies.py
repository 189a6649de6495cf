"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from affschur.core import PeriodicMatrix, window_slots


@st.composite
def offdiag_matrices(draw, n=2, window=2, max_entry=2, max_sigma=3, sign=0):
    slots = [(i, j) for i, j in window_slots(n, window)
             if sign == 0 or (sign > 0) == (i < j)]
    entries = []
    total = 0
    for i, j in slots:
        a = draw(st.integers(0, max_entry))
        if total + a > max_sigma:
            a = 0
        total += a
        if a:
            entries.append((i, j, a))
    return PeriodicMatrix(n, entries)


@st.composite
def theta_matrices(draw, n=2, r=3, window=2):
    from affschur.core import enumerate_theta

    mats = list(enumerate_theta(n, r, window))
    return draw(st.sampled_from(mats))


windows = st.lists(st.integers(-6, 6), min_size=1, max_size=4)


@st.composite
def affine_windows(draw, r=3, spread=2):
    perm = draw(st.permutations(range(1, r + 1)))
    shifts = draw(st.lists(st.integers(-spread, spread), min_size=r, max_size=r))
    total = sum(shifts)
    shifts[0] -= total
    return tuple(x + s * r for x, s in zip(perm, shifts))
