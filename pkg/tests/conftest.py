import pytest

ACCEPTANCE: dict[str, str] = {}


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False, help="run long explorations (k = 6 and up)")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long runs enabled with --slow")
    config.addinivalue_line("markers", "criterion(label): acceptance criterion covered by the test")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip = pytest.mark.skip(reason="needs --slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


RANK = {"SKIP": 0, "PASS": 1, "FAIL": 2}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or not (rep.when == "call" or rep.outcome != "passed"):
        return
    status = "FAIL" if rep.failed else ("SKIP" if rep.skipped else "PASS")
    label = mark.args[0]
    if RANK[status] >= RANK.get(ACCEPTANCE.get(label, "SKIP"), 0):
        ACCEPTANCE[label] = status


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE, key=lambda s: (int(s.split()[0]), s)):
        terminalreporter.write_line(f"{ACCEPTANCE[label]}  criterion {label}")
