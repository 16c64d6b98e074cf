import pytest

_ACCEPTANCE_ROWS = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE_ROWS


def record(log, cid, name, ok, runtime, detail=""):
    """Register one acceptance criterion outcome and assert it."""
    log.append((cid, name, ok, runtime, detail))
    verdict = "PASS" if ok else "FAIL"
    line = f"[{verdict}] {cid} {name} ({runtime:.2f}s)"
    if detail:
        line += f" :: {detail}"
    print(line)
    assert ok, line


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_ROWS:
        return
    terminalreporter.section("acceptance criteria")
    for cid, name, ok, runtime, detail in _ACCEPTANCE_ROWS:
        verdict = "PASS" if ok else "FAIL"
        line = f"[{verdict}] {cid} {name} ({runtime:.2f}s)"
        if detail:
            line += f" :: {detail}"
        terminalreporter.write_line(line)
