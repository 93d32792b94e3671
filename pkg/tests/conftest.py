import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from mixparity.ring import LaurentPoly  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def polys(max_terms=5, lo=-6, hi=6, coeff=5):
    return st.dictionaries(st.integers(lo, hi), st.integers(-coeff, coeff),
                           max_size=max_terms).map(LaurentPoly)


# -- acceptance reporting ---------------------------------------------------

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or rep.when != "call":
        return
    number, title = mark.args
    _RESULTS[number] = (title, rep.passed, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_RESULTS):
        title, ok, secs = _RESULTS[n]
        tr.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {title}  ({secs:.2f} s)")
