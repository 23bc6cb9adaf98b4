ACCEPTANCE_LINES: list[str] = []


def record_acceptance(name: str, passed: bool, millis: int, detail: str = "") -> None:
    mark = "PASS" if passed else "FAIL"
    suffix = f" ({detail})" if detail else ""
    ACCEPTANCE_LINES.append(f"[{mark}] {name}: {millis} ms{suffix}")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
