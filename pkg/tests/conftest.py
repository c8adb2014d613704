import pytest

# acceptance outcomes, keyed by criterion number; filled by test_acceptance
ACCEPTANCE: dict[int, dict] = {}


def record(criterion: int, title: str, passed: bool, detail: str = "") -> None:
    entry = ACCEPTANCE.setdefault(criterion, {"title": title, "passed": True, "details": []})
    entry["passed"] = entry["passed"] and passed
    if detail:
        entry["details"].append(detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        e = ACCEPTANCE[k]
        tr.write_line(f"{'PASS' if e['passed'] else 'FAIL'} criterion {k}: {e['title']}")
        for d in e["details"]:
            tr.write_line(f"    {d}")


@pytest.fixture
def p52():
    from betanum import Params
    return Params(5, 2)
