import pytest

ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for one acceptance criterion.

    The test calls ``record(number, title)`` up front and may call it again
    with a detail string; the status comes from the test outcome.
    """
    state = {}

    def record(number, title, detail=""):
        state.update(number=number, title=title, detail=detail)

    yield record
    if state:
        failed = request.node.rep_call.failed if hasattr(request.node, "rep_call") else True
        ACCEPTANCE[state["number"]] = ("FAIL" if failed else "PASS", state["title"], state["detail"])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        status, title, detail = ACCEPTANCE[number]
        line = "%s criterion %d: %s" % (status, number, title)
        if detail:
            line += " (%s)" % detail
        tr.write_line(line)
