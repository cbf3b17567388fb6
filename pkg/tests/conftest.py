import pytest

# (criterion id, passed, description) appended by test_acceptance.py
ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion():
    def record(cid: str, passed: bool, text: str) -> bool:
        ACCEPTANCE.append((cid, passed, text))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid, passed, text in sorted(ACCEPTANCE, key=lambda r: int(r[0].removeprefix("AC"))):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {cid:<5} {text}")
