import pytest

from hankelbound.classes import FunctionClass, OrderParam

_criteria: dict[int, tuple[str, list[str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion n")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marks = getattr(report, "criterion", None)
    if marks is None:
        return
    n, text = marks
    _criteria.setdefault(n, (text, []))[1].append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep.criterion = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        text, outcomes = _criteria[n]
        status = "PASS" if outcomes and all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {n}: {text}")


@pytest.fixture
def starlike():
    return FunctionClass.STARLIKE


@pytest.fixture
def convex():
    return FunctionClass.CONVEX


ALPHAS = [1.0, 1.25, 1.5, 1.75, 2.0]


@pytest.fixture(params=ALPHAS, ids=lambda a: f"alpha={a}")
def order(request):
    return OrderParam(request.param)
