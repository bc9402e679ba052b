import pytest

_criteria = []


@pytest.fixture
def criterion(request):
    """Record ``(label, detail)`` for the acceptance summary; pass/fail is
    taken from the test outcome."""
    entry = {"node": request.node, "label": None, "detail": ""}
    _criteria.append(entry)

    def record(label, detail=""):
        entry["label"], entry["detail"] = label, detail

    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.acceptance_passed = rep.passed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for entry in _criteria:
        node = entry["node"]
        label = entry["label"] or node.name
        status = "PASS" if getattr(node, "acceptance_passed", False) else "FAIL"
        terminalreporter.write_line(f"[{status}] {label} {entry['detail']}".rstrip())
