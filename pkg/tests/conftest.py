import pytest

from locint.toric import line_bundle, make_surface


@pytest.fixture(scope="session")
def P2():
    return make_surface("p2")


@pytest.fixture(scope="session")
def Q():
    return make_surface("p1xp1")


@pytest.fixture(scope="session")
def L22(Q):
    return line_bundle(Q, (2, 2))


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line for the calling acceptance test."""
    label = request.node.name.split("_")[1].upper()
    state = {"detail": ""}
    yield state
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    line = f"{label} {'PASS' if ok else 'FAIL'} {state['detail']}".rstrip()
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
