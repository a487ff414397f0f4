import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from dioa import models
from dioa.modelio import load_model

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def example():
    return load_model("creation_example")


@pytest.fixture(scope="session")
def fixture_model():
    return load_model("creation_fixture")


@pytest.fixture(scope="session")
def phone():
    return load_model("mobile_phone")


@pytest.fixture(scope="session")
def travel():
    return load_model("travel_agent")


@pytest.fixture
def one():
    return models.one()


@pytest.fixture
def sink():
    return models.sink()


def pytest_terminal_summary(terminalreporter):
    acceptance = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    lines = getattr(acceptance, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
