"""Acceptance criteria 1-9, each at zero tolerance.

One line per criterion is printed in the terminal summary.
"""

import pytest

from conftest import ACCEPTANCE_LINES
from kusphere.suites import CRITERIA


@pytest.mark.acceptance
@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    title, run = CRITERIA[number]
    rep = run()
    status = "PASS" if rep.ok else "FAIL"
    line = f"criterion {number} ({title}): {status}  [{rep.seconds:.1f}s] {rep.summary()}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    detail = "\n".join(f"{c.name}: {c.detail}" for c in rep.failures[:20])
    assert rep.ok, detail
