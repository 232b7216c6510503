import pytest

_CRITERIA: dict[int, str] = {}


@pytest.fixture
def criterion_line():
    """Record the one-line verdict of an acceptance criterion.

    Lines are echoed immediately and repeated, in order, in the terminal summary.
    """

    def record(number: int, title: str, passed: bool, detail: str = "") -> None:
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        _CRITERIA[number] = line
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[n])
