"""Acceptance gate: one test per criterion, each at its stated tolerance.

Every run prints a ``[PASS]`` or ``[FAIL]`` line per criterion in the
terminal summary. ``casimir validate`` runs the same checks.
"""

import pytest

from lorentz_casimir.validation import CHECKS

ACCEPTANCE_LINES: list[str] = []


@pytest.mark.parametrize("check", CHECKS, ids=[c.__name__.removeprefix("check_") for c in CHECKS])
def test_criterion(check):
    result = check()
    ACCEPTANCE_LINES.append(result.line())
    print(result.line())
    assert result.passed, result.line()
