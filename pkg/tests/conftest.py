"""Shared test plumbing: the acceptance-criteria report."""

ACCEPTANCE_RESULTS: list[str] = []


def record_criterion(number: int, label: str, passed: bool, detail: str = "") -> str:
    status = "PASS" if passed else "FAIL"
    line = f"[{status}] criterion {number}: {label}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_RESULTS.append(line)
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)
