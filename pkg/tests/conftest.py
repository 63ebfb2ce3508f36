from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"

_acceptance: dict[str, str] = {}


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        previous = _acceptance.get(name)
        if previous != "FAIL":
            _acceptance[name] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance, key=lambda n: int(n.split("_")[1][1:]) if n.split("_")[1][1:].isdigit() else 99):
        terminalreporter.write_line(f"{_acceptance[name]}  {name}")
