"""Acceptance suite: one test and one printed PASS/FAIL line per criterion.

Run directly (``python3 tests/test_acceptance.py``) for just the summary
lines, or through pytest.  Criterion 1 runs the full sweep (n = 2, 3 and
r = 2, 3, 4) and takes several minutes on one core.
"""

import sys

import pytest

from affschur.verify import SUITES, run_suite

SEED = 0
ORDER = list(SUITES)


def _report(res, capsys=None):
    text = f"{res.line()}  ({res.seconds:.1f}s) {dict(res.details)}"
    if capsys is None:
        print(text)
    else:
        with capsys.disabled():
            print("\n" + text)


@pytest.mark.parametrize("name", ORDER)
def test_criterion(name, capsys):
    res = run_suite(name, seed=SEED)
    _report(res, capsys)
    assert res.passed, res.details


if __name__ == "__main__":
    results = [run_suite(name, seed=SEED) for name in ORDER]
    for res in results:
        _report(res)
    sys.exit(0 if all(r.passed for r in results) else 1)
