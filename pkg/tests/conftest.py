import os

import pytest
from hypothesis import settings

from atanforge.precision import ENV_DIGITS, PrecisionContext

settings.register_profile("atanforge", deadline=None, max_examples=30, derandomize=True)
settings.load_profile("atanforge")

# lines appended by the acceptance tests, echoed in the terminal summary
ACCEPTANCE_LINES: list = []


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    monkeypatch.delenv(ENV_DIGITS, raising=False)


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext(60)


@pytest.fixture(scope="session")
def mp(ctx):
    return ctx.mp


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
