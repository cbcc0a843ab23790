"""Collects the acceptance verdicts and prints them after the run."""

from __future__ import annotations

VERDICTS: dict[int, tuple[bool, str]] = {}


def record(number: int, ok: bool, detail: str):
    VERDICTS[number] = (ok, detail)
    print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(VERDICTS):
        ok, detail = VERDICTS[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
