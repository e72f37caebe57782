"""Shared fixtures and the per-criterion PASS/FAIL summary of the acceptance suite."""
from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

_CRITERIA: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA.setdefault(marker, []).append(report.outcome == "passed")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep.criterion = int(m.args[0])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        verdict = "PASS" if all(_CRITERIA[n]) else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d}: {verdict}")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def half():
    return Fraction(1, 2)
