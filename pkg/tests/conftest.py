import pytest

_acceptance_lines = []


def record_criterion(item_id: str, ok: bool, detail: str = "") -> None:
    """Collects one pass/fail line per acceptance criterion for the summary."""
    line = f"[criterion {item_id}] {'PASS' if ok else 'FAIL'}" + (f"  {detail}" if detail else "")
    _acceptance_lines.append(line)
    print(line)


@pytest.hookimpl(trylast=True)
def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
