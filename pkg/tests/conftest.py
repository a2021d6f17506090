from __future__ import annotations

import sys

import pytest
from hypothesis import HealthCheck, settings

from mwer.fixtures import delivery_scenario, updown_scenario

settings.register_profile(
    "default",
    deadline=None,
    max_examples=150,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def delivery():
    return delivery_scenario()


@pytest.fixture
def updown():
    return updown_scenario()


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(module.RESULTS, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
        terminalreporter.write_line(line)
