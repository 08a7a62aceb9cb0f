import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

_CRITERIA = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    failed = report.failed or (report.when == "call" and report.skipped)
    if report.when == "call" or failed:
        _CRITERIA[n] = _CRITERIA.get(n, True) and not failed


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(f"CRITERION {n}: {'PASS' if _CRITERIA[n] else 'FAIL'}")
