"""Shared pytest wiring: the acceptance suite's per-criterion report lines
are collected on the pytest config and echoed in the terminal summary."""

import pytest


def pytest_configure(config):
    config._criterion_lines = []


@pytest.fixture
def criterion_reporter(request):
    """Record one acceptance pass/fail line for the terminal summary."""

    def record(line: str) -> None:
        request.config._criterion_lines.append(line)
        print(line, flush=True)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_criterion_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
