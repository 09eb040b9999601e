"""Shared fixtures and the acceptance-report terminal section.

Acceptance tests register one human-readable line per checked property
through the ``criterion`` fixture; the lines are printed together in a
dedicated section at the end of the run so the overall verdicts can be
read without scrolling through the full test output.
"""

from __future__ import annotations

from contextlib import contextmanager

import pytest

# (criterion number, line) pairs collected across the whole session.
_ACCEPTANCE_LINES: list[tuple[int, str]] = []


def record_acceptance(number: int, line: str) -> None:
    _ACCEPTANCE_LINES.append((number, line))


@contextmanager
def _criterion(number: int, description: str):
    """Record a PASS/FAIL line for one acceptance criterion.

    The body's assertions run as usual; any failure is re-raised after
    the FAIL line is recorded, so the report stays complete even when a
    criterion does not hold.
    """
    try:
        yield
    except BaseException as exc:
        detail = str(exc).strip().splitlines()
        suffix = f": {detail[0]}" if detail else ""
        record_acceptance(number, f"ACCEPTANCE {number:2d} FAIL — {description}{suffix}")
        raise
    else:
        record_acceptance(number, f"ACCEPTANCE {number:2d} PASS — {description}")


@pytest.fixture
def criterion():
    """Context manager factory: ``with criterion(3, "..."):``."""
    return _criterion


@pytest.fixture
def report():
    """Record a non-asserted acceptance line (observations, not checks)."""
    return record_acceptance


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_ACCEPTANCE_LINES, key=lambda pair: pair[0]):
        terminalreporter.write_line(line)
