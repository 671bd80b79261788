import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from scorex.core import Pmv  # noqa: E402

DATA = Path(__file__).parent / "data"


@pytest.fixture
def worked_pair():
    return Pmv.of([0.8, 0.2]), Pmv.of([0.6, 0.4])


@st.composite
def pmvs(draw, n=None, min_n=2, max_n=8):
    if n is None:
        n = draw(st.integers(min_n, max_n))
    raw = draw(st.lists(st.floats(0.01, 1.0), min_size=n, max_size=n))
    w = np.asarray(raw) / np.sum(raw)
    return Pmv.of(w)


@st.composite
def pmv_pairs(draw, min_n=2, max_n=8):
    n = draw(st.integers(min_n, max_n))
    return draw(pmvs(n=n)), draw(pmvs(n=n))


_ACCEPTANCE: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion this test checks")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label = marker.args[0]
    if report.when == "call" or (report.when == "setup" and report.failed):
        _ACCEPTANCE[label] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_ACCEPTANCE, key=lambda s: int(s.split(".")[0])):
        terminalreporter.write_line(f"{_ACCEPTANCE[label]}  {label}")
