"""Acceptance criteria 1-11, full profile, one line per criterion."""

import pytest

from opsusp.acceptance import CRITERIA, FULL_BUDGET_SECONDS, acceptance


@pytest.fixture(scope="module")
def report():
    return acceptance("full")


@pytest.mark.parametrize("number", [n for n, _, _ in CRITERIA] + [11])
def test_criterion(report, number, capsys):
    result = next(r for r in report.results if r.number == number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.ok, result.detail


def test_full_profile_within_budget(report):
    assert report.seconds < FULL_BUDGET_SECONDS
    assert [r.number for r in report.results] == list(range(1, 12))
