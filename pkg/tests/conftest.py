"""Shared test plumbing: acceptance reporting and kernel warmup."""

import pytest

# (criterion label, passed, detail) tuples appended by tests/test_acceptance.py
ACCEPTANCE_RESULTS = []


def record_acceptance(label: str, passed: bool, detail: str) -> None:
    ACCEPTANCE_RESULTS.append((label, passed, detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status}  {label}: {detail}")


@pytest.fixture(scope="session")
def warm_kernels():
    from wavereg import _kernels

    _kernels.warmup()
    return _kernels
