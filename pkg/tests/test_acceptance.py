"""Acceptance suite: one pass/fail line per criterion, exact integer checks.

The criteria share one sweep so the last criterion can re-verify every
construction output produced by the earlier ones.
"""

import pytest

from prodbook.acceptance import CRITERIA, Sweep


@pytest.fixture(scope="module")
def sweep():
    return Sweep(seeds=20)


@pytest.mark.slow
@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"C{i}" for i in range(1, len(CRITERIA) + 1)])
def test_criterion(criterion, sweep, capsys):
    result = criterion(sweep)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
