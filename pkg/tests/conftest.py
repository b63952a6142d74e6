import pytest

# criterion id -> (status, detail), filled by test_acceptance.py
ACCEPTANCE: dict = {}


@pytest.fixture
def record():
    def _record(cid, ok, detail=""):
        ACCEPTANCE[cid] = ("PASS" if ok else "FAIL", detail)
        print(f"{cid} {'PASS' if ok else 'FAIL'} {detail}")
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE, key=lambda c: int(c[1:])):
        status, detail = ACCEPTANCE[cid]
        terminalreporter.write_line(f"{cid} {status}  {detail}")
