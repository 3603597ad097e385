"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to watch the lines appear;
the exhaustive corpus comparison is computed once and shared.
"""

import sys

import pytest

from treerep import acceptance


@pytest.mark.parametrize(
    "name,title,fn",
    acceptance.CRITERIA,
    ids=[c[0] for c in acceptance.CRITERIA],
)
def test_criterion(name, title, fn):
    ok, detail = fn()
    line = f"{name} {'PASS' if ok else 'FAIL'} ({title}): {detail}"
    print(line)
    sys.stderr.write(line + "\n")
    assert ok, line
