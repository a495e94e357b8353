"""Terminal summary: one pass/fail line per acceptance test.

Each test in test_acceptance.py states its guarantee in the first line of
its docstring; this hook replays those lines with outcomes at the end of
the run so the acceptance gate can be read without scrolling the log.
"""

_lines: dict[str, str] = {}  # nodeid -> summary line (collection order)
_outcomes: dict[str, str] = {}


def pytest_collection_modifyitems(config, items):
    for item in items:
        if item.module.__name__ != "test_acceptance":
            continue
        doc = item.function.__doc__ or item.name
        _lines[item.nodeid] = doc.strip().splitlines()[0]


def pytest_runtest_logreport(report):
    if report.nodeid not in _lines:
        return
    if report.when == "call":
        _outcomes[report.nodeid] = report.outcome
    elif report.when == "setup" and report.outcome != "passed":
        # setup failures and skips never reach the call phase
        _outcomes[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _lines:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, line in _lines.items():
        outcome = _outcomes.get(nodeid, "notrun")
        tag = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}.get(
            outcome, outcome.upper()
        )
        terminalreporter.write_line(f"[{tag}] {line}")
