import random
import re

import mpmath
import pytest
from hypothesis import settings

from pslcover import nielsen

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

_CRITERIA: dict[int, tuple[str, str]] = {}


@pytest.fixture(autouse=True)
def _restore_precision():
    prec = mpmath.mp.prec
    yield
    mpmath.mp.prec = prec


@pytest.fixture(scope="session")
def psl62_orbit():
    """The 48-tuple straight orbit with the full Hurwitz table and geometric family words."""
    cv = nielsen.ClassVector.parse(nielsen.PSL62_CLASSES)
    tup = nielsen.search_tuple(cv, random.Random(1))
    table = nielsen.braid_orbit(tup, full=True)
    nielsen.set_family(table, nielsen.geometric_family_words())
    return table


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m or report.when not in ("setup", "call"):
        return
    n = int(m.group(1))
    if report.when == "setup" and report.passed:
        return
    _CRITERIA[n] = (m.group(2).replace("_", " "), "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        name, status = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d} {name}: {status}")
