import pytest

# filled by tests/test_acceptance.py: criterion number -> (passed, description)
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def record():
    def _record(n: int, ok: bool, text: str):
        prev = ACCEPTANCE.get(n)
        ACCEPTANCE[n] = ((prev[0] if prev else True) and ok, text if not prev else prev[1] + "; " + text)
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {text}")
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} - {text}")
