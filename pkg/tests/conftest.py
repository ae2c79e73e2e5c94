import re

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")
_results: dict[int, tuple[str, str, float]] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.when == "call" or report.outcome != "passed":
        if n not in _results or _results[n][1] == "PASS":
            status = "PASS" if report.outcome == "passed" else "FAIL"
            _results[n] = (m.group(2).replace("_", " "), status, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        name, status, seconds = _results[n]
        terminalreporter.write_line(f"criterion {n:2d} {status}  {name} ({seconds:.1f}s)")
