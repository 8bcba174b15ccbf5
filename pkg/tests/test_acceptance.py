"""The nine acceptance criteria, one test each.

Each test prints a single PASS/FAIL line (visible even under output capture)
and requires the check to finish in under ten seconds.
"""

import pytest

from invmon import verification as v

TIME_LIMIT = 10.0


@pytest.mark.parametrize("criterion", v.CRITERIA, ids=lambda c: c.__name__)
def test_criterion(criterion, capsys):
    result = criterion()
    with capsys.disabled():
        print(f"\n{result.line()}")
    assert result.passed, result.detail
    assert result.seconds < TIME_LIMIT, f"took {result.seconds:.1f}s"
