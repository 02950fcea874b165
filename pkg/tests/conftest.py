import pytest

from primenonres import arithmetic

# re-exponentiate every discrete log during tests
arithmetic.CHECK_DLOG = True

RESULTS = pytest.StashKey[list]()


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): numbered acceptance criterion")
    config.stash[RESULTS] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is not None and (rep.when == "call" or (rep.when == "setup" and rep.failed)):
        item.config.stash[RESULTS].append((mark.args[0], mark.args[1], rep.passed, rep.duration))


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(RESULTS, [])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, secs in sorted(results):
        terminalreporter.write_line(
            f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {title}  ({secs:.1f}s)"
        )
