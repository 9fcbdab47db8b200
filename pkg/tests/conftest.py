import functools

import pytest

from forge import casebook


@functools.lru_cache(maxsize=None)
def case_report(name: str) -> casebook.CaseReport:
    return casebook.run_case(name)


@pytest.fixture(scope="session")
def N():
    return casebook.niemeier()


@pytest.fixture(scope="session")
def code(N):
    return N.code


@pytest.fixture(scope="session")
def reports():
    return case_report


_CRITERIA: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if report.failed:
        _CRITERIA[number] = ("FAIL", title)
    elif report.when == "call" and number not in _CRITERIA:
        _CRITERIA[number] = ("PASS" if report.passed else "FAIL", title)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        state, title = _CRITERIA[number]
        terminalreporter.write_line(f"{state}  criterion {number:2d}: {title}")
