from pathlib import Path

import pytest

DATA = Path(__file__).resolve().parents[1] / "src" / "nchs" / "data"


@pytest.fixture
def data_dir():
    return DATA


_acceptance: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_c" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    num = int(name[6:8])
    if report.when == "call" or report.failed:
        prev = _acceptance.get(num, (name, "PASS"))[1]
        outcome = "FAIL" if report.failed or prev == "FAIL" else "PASS"
        _acceptance[num] = (name, outcome)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_acceptance):
        name, outcome = _acceptance[num]
        terminalreporter.write_line(f"criterion {num:2d}: {outcome}  {name}")
