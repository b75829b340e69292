import os

import hypothesis
import pytest

from borsuk.certify import Pipeline

hypothesis.settings.register_profile("default", max_examples=50, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

RUN_FULL = os.environ.get("BORSUK_FULL") == "1"


@pytest.fixture(scope="session")
def pipeline():
    return Pipeline()


@pytest.fixture(scope="session")
def code(pipeline):
    return pipeline.code


@pytest.fixture(scope="session")
def M(pipeline):
    return pipeline.M


_criteria: list[tuple[str, bool, str]] = []


@pytest.fixture(scope="session")
def criteria_log():
    return _criteria


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _criteria:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
