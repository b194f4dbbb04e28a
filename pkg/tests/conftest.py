from __future__ import annotations

import pytest

_LINES: list[str] = []


@pytest.fixture(scope="session")
def verdict():
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(label, ok: bool, detail: str) -> bool:
        tag = "PASS" if ok else "FAIL"
        line = f"{tag} criterion {label}: {detail}"
        print(line)
        _LINES.append(line)
        return ok

    return record


@pytest.fixture(scope="session")
def note():
    """Informational lines that are not criteria."""

    def record(detail: str) -> None:
        line = f"INFO {detail}"
        print(line)
        _LINES.append(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
