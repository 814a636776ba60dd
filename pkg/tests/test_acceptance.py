"""Acceptance criteria 1-9, one PASS/FAIL line each.

Run directly (``python3 tests/test_acceptance.py``) for the bare report, or
through pytest, where the same lines are printed uncaptured. Non-blocking
checks print as NOTE and never fail a criterion.
"""
import sys

import pytest

from valseq.verify import CRITERIA


def evaluate(n):
    checks = CRITERIA[n]()
    ok = all(c.ok for c in checks if c.blocking)
    return ok, checks


def report_line(n, ok, checks):
    bad = [c.name for c in checks if c.blocking and not c.ok]
    tail = f" ({len(checks)} checks)" if ok else " failed: " + "; ".join(bad)
    return f"{'PASS' if ok else 'FAIL'} criterion {n}{tail}"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, checks = evaluate(n)
    with capsys.disabled():
        print()
        print(report_line(n, ok, checks))
        for c in checks:
            if not c.ok or not c.blocking:
                print("    " + c.line())
    assert ok, "\n".join(c.line() for c in checks if c.blocking and not c.ok)


if __name__ == "__main__":
    failed = 0
    for n in sorted(CRITERIA):
        ok, checks = evaluate(n)
        failed += not ok
        print(report_line(n, ok, checks))
    sys.exit(1 if failed else 0)
