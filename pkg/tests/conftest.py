import pytest

PRIMES = (5, 7, 11, 13)

_acceptance: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n, summary): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    n, summary = marker.args
    # a criterion fails if any of its tests fails in any phase
    if rep.failed:
        _acceptance[n] = ("FAIL", summary)
    elif rep.when == "call" and rep.passed:
        _acceptance.setdefault(n, ("PASS", summary))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_acceptance):
        status, summary = _acceptance[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {summary}")
