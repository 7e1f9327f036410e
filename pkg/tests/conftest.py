from __future__ import annotations

import os
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from mackit.complex import SimplicialComplex  # noqa: E402

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def complexes(draw, min_m: int = 1, max_m: int = 5, max_facets: int = 5):
    """Random complexes on [m]; ghost vertices are allowed."""
    m = draw(st.integers(min_m, max_m))
    masks = draw(st.lists(st.integers(0, (1 << m) - 1), min_size=0, max_size=max_facets))
    facets = [tuple(i + 1 for i in range(m) if x >> i & 1) for x in masks]
    return SimplicialComplex(m, facets)


@st.composite
def complexes_without_ghosts(draw, min_m: int = 1, max_m: int = 5, max_facets: int = 5):
    K = draw(complexes(min_m, max_m, max_facets))
    facets = list(K.facets) + [(v,) for v in K.ghost_vertices]
    return SimplicialComplex(K.m, facets)


# -- acceptance report ------------------------------------------------------

_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config.addinivalue_line("markers", "slow: exhaustive sweeps taking several seconds")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    number, title = marker
    status = "PASS" if report.outcome == "passed" else "FAIL"
    # a criterion spread over several tests passes only if all of them do
    if _CRITERIA.get(number, ("PASS",))[0] == "FAIL":
        status = "FAIL"
    _CRITERIA[number] = (status, title)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report.criterion = tuple(marker.args)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        status, title = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")
