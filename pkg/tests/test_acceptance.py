"""Every acceptance criterion, at its stated tolerance, one result per criterion."""

import pytest

from h4matroid.verify import ACCEPTANCE_IDS, Verifier

from .conftest import ACCEPTANCE_LINES


@pytest.fixture(scope="module")
def report():
    return {c.id: c for c in Verifier(seed=0).run(only=ACCEPTANCE_IDS).claims}


@pytest.mark.parametrize("number, claim_id", list(enumerate(ACCEPTANCE_IDS, start=1)), ids=ACCEPTANCE_IDS)
def test_criterion(report, number, claim_id):
    c = report[claim_id]
    line = f"criterion {number:2d} {c.status.upper():4} {claim_id:<26} {c.elapsed_s:6.2f}s  {c.anchor}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert c.passed, f"expected {c.expected!r}, computed {c.computed!r}"
