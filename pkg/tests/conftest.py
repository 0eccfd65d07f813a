import pytest

_criteria = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    n, title = marker.args
    note = getattr(item, "criterion_note", "")
    _criteria.append((n, title, report.outcome, report.duration, note))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n, title, outcome, duration, note in sorted(_criteria):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        line = f"[{n:>2}] {verdict}  {title} ({duration:.1f}s)"
        if note:
            line += f"  -- {note}"
        tr.write_line(line)


@pytest.fixture
def note(request):
    """Attach a short measurement summary to the criterion's result line."""
    def record(text):
        request.node.criterion_note = text
    return record
