from __future__ import annotations

import pytest

_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False,
                     help="also run the large-field AGL2 checks (q = 31, 37, 43)")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: large-field runs, enabled by --slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip = pytest.mark.skip(reason="needs --slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def criterion():
    """Record the verdict line of one acceptance criterion."""

    def record(number: int, ok: bool | None, detail: str) -> None:
        tag = "INFO" if ok is None else ("PASS" if ok else "FAIL")
        _CRITERIA[number] = (tag, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        tag, detail = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {tag}  {detail}")
