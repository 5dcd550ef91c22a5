import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qwhittaker import build_root_system  # noqa: E402


@pytest.fixture(params=["A1", "A2", "A3", "D4"])
def rs(request):
    return build_root_system(request.param)


@pytest.fixture
def A1():
    return build_root_system("A1")


@pytest.fixture
def A2():
    return build_root_system("A2")


@pytest.fixture
def D4():
    return build_root_system("D4")


# criterion number -> (passed, label, seconds); filled by test_acceptance.py
ACCEPTANCE_RESULTS: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, label, secs = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {label}  ({secs:.2f}s)")
