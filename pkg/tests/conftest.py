import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import acceptance_log  # noqa: E402
from contentlab import harness  # noqa: E402


@pytest.fixture(scope="session")
def default_corpus():
    return harness.generate_corpus()


@pytest.fixture(scope="session")
def timed_suite(default_corpus):
    start = time.perf_counter()
    summary = harness.verify_theorem_suite(default_corpus)
    return summary, time.perf_counter() - start


@pytest.fixture(scope="session")
def default_suite(timed_suite):
    return timed_suite[0]


@pytest.fixture(scope="session")
def default_lemmas(default_corpus):
    return harness.verify_localization_lemmas(default_corpus)


def pytest_terminal_summary(terminalreporter):
    lines = acceptance_log.summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
