import pytest

# Filled by the acceptance suite: criterion number -> (passed, detail line).
ACCEPTANCE_LINES: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def acceptance_report():
    def report(number: int, passed: bool, detail: str) -> None:
        ACCEPTANCE_LINES[number] = (bool(passed), detail)
        print(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
    return report


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        passed, detail = ACCEPTANCE_LINES[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}")
