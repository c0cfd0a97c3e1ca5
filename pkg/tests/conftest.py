import pytest

_ACCEPTANCE: dict[str, list[tuple[bool, str]]] = {}


@pytest.fixture
def criterion():
    """Record one check of an acceptance criterion for the end-of-run summary."""

    def record(name: str, passed: bool, detail: str) -> bool:
        _ACCEPTANCE.setdefault(name, []).append((bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        checks = _ACCEPTANCE[name]
        failed = [d for ok, d in checks if not ok]
        status = "PASS" if not failed else "FAIL"
        extra = f" ({'; '.join(failed)})" if failed else ""
        terminalreporter.write_line(f"{status} {name}: {len(checks) - len(failed)}/{len(checks)} checks{extra}")
