"""Acceptance criteria: one suite per criterion, run at the default orders.

Run under pytest (a summary section lists one line per criterion) or directly
with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path

import pytest

from quasijac import checks

GOLDEN = Path(__file__).parent / "golden" / "digests.json"
BUDGET_SECONDS = 120

CRITERIA = [
    (1, "quasi-basics"),
    (2, "gen1"),
    (3, "gtilde-laws"),
    (4, "ptilde-laws"),
    (5, "twisted-eisenstein"),
    (6, "heat-theta"),
    (7, "e8-ramanujan"),
    (8, "residue-vanishing"),
    (9, "sumzero"),
    (10, "operator-relations"),
    (11, "fermion-kernel"),
    (12, "fermion-series"),
    (13, "fermion-npoint"),
    (14, "determinism"),
]


def run_all() -> tuple[dict, float]:
    golden = json.loads(GOLDEN.read_text())
    start = time.perf_counter()
    reports = checks.run_suites(checks.SUITE_IDS, checks.Settings(), jobs=1, golden=golden)
    return {r.suite: r for r in reports}, time.perf_counter() - start


def describe(number: int, report) -> str:
    status = "PASS" if report.passed else "FAIL"
    line = f"criterion {number:2d} {report.suite:<20s} {status} ({len(report.checks)} checks)"
    for c in sorted(report.checks, key=lambda c: c.check_id):
        if not c.passed:
            line += f"\n    {c.check_id}: {json.dumps(c.witness, sort_keys=True)}"
    return line


@pytest.fixture(scope="module")
def outcome():
    return run_all()


@pytest.mark.parametrize("number, suite", CRITERIA, ids=[s for _, s in CRITERIA])
def test_criterion(outcome, number, suite):
    from conftest import ACCEPTANCE_LINES

    reports, _ = outcome
    line = describe(number, reports[suite])
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert reports[suite].passed, line


def test_runtime_budget(outcome):
    _, elapsed = outcome
    assert elapsed < BUDGET_SECONDS


def test_golden_file_covers_every_suite():
    assert sorted(json.loads(GOLDEN.read_text())) == sorted(checks.SUITES)


if __name__ == "__main__":
    reports, elapsed = run_all()
    ok = True
    for number, suite in CRITERIA:
        print(describe(number, reports[suite]))
        ok &= reports[suite].passed
    print(f"total {elapsed:.1f}s")
    sys.exit(0 if ok else 1)
