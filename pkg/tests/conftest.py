import pytest

_results: dict[str, list] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    cid, title = marker.args
    entry = _results.setdefault(cid, [title, True, False])
    if report.when == "call":
        entry[2] = True
    if report.failed:
        entry[1] = False


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_results, key=lambda c: [int(p) if p.isdigit() else p for p in c.split(".")]):
        title, passed, ran = _results[cid]
        status = "PASS" if passed and ran else ("FAIL" if not passed else "SKIP")
        terminalreporter.write_line(f"[{status}] {cid} {title}")
