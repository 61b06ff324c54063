"""Shared fixtures and the acceptance-summary reporter."""
import re

import pytest

from nucshoot.model import ModelParams
from nucshoot.shooting import bisect_ground_state

_ACCEPTANCE: dict[int, bool] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when != "call":
        return
    m = re.match(r"test_criterion_(\d+)", item.name)
    if m:
        _ACCEPTANCE[int(m.group(1))] = rep.passed


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_ACCEPTANCE):
        verdict = "PASS" if _ACCEPTANCE[k] else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {k}: {verdict}")


@pytest.fixture(scope="session")
def gs94():
    return bisect_ground_state(ModelParams(9.0, 4.0))


@pytest.fixture(scope="session")
def gs41():
    return bisect_ground_state(ModelParams(4.0, 1.0))
