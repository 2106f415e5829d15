import os
import random
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

import contracts  # noqa: E402

settings.register_profile(
    "fixed",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large, HealthCheck.large_base_example],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "fixed"))

contracts.install()

ROOT = Path(__file__).resolve().parent.parent
SCENARIOS = ROOT / "scenarios"


def pytest_configure(config):
    config.addinivalue_line("markers", "property: invariant suites run by the acceptance regression")


@pytest.fixture
def rng():
    return random.Random(20261015)


@pytest.fixture(scope="session")
def scenarios_dir():
    return SCENARIOS


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    total = sum(contracts.CALLS.values())
    terminalreporter.write_line(f"contract-checked returns: {total}")
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
