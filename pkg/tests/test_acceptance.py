"""Acceptance criteria 1-9 over the reference fixtures.

The fast tier runs by default; SYZCURVES_FULL=1 adds the degree 28-33
fixtures.  Each criterion gets one test and one summary line.
"""
import pytest

from syzcurves import suite

from conftest import ACCEPTANCE, RUN_FULL

TIER = "full" if RUN_FULL else "fast"


@pytest.fixture(scope="session")
def results():
    res = suite.run_suite(TIER, seed=0)
    ACCEPTANCE["tier"] = TIER
    ACCEPTANCE["verdicts"] = suite.criterion_verdicts(res)
    return res


def _failures(results, n):
    bad = []
    for r in results:
        if n == 9:
            flags = [k for k, v in r.outcome.properties.items() if not v]
            if r.criterion == 9 and not r.outcome.passed or flags:
                bad.append(f"{r.name}: {r.outcome.observed} {flags or ''} {r.outcome.note}".strip())
        elif r.criterion == n and not r.passed:
            bad.append(f"{r.name}: observed {r.outcome.observed}; expected {r.outcome.expected}")
    return bad


@pytest.mark.parametrize("n", range(1, 10))
def test_criterion(results, n):
    verdicts = ACCEPTANCE["verdicts"]
    assert n in verdicts, f"no fixture for criterion {n}"
    assert verdicts[n], "\n".join(_failures(results, n))
