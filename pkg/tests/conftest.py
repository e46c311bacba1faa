from collections import defaultdict

import pytest

_results: dict[str, list[tuple[str, str]]] = defaultdict(list)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _results[marker.args[0]].append((item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(_results, key=lambda c: int(c.split()[0].lstrip("AC"))):
        outcomes = _results[criterion]
        ok = all(o == "passed" for _, o in outcomes)
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {criterion}")
