"""Pytest plumbing: per-criterion acceptance summary lines.

Each acceptance test is named test_criterion_<N>_<slug>; outcomes are
aggregated per criterion and printed as one PASS/FAIL line each at the end
of the run.
"""

import re

CRITERION_PATTERN = re.compile(r"test_criterion_(\d+)")

TITLES = {
    1: "soundness on random non-negative matrices",
    2: "PSD soundness and alpha non-negativity",
    3: "permanental inverse worked example",
    4: "exactness identities (rank-1, minus-variant, u-recursion)",
    5: "inequality suites (Schur, uncrossing, two-row, condense, minor ratio)",
    6: "exponential family closed form and limits",
    7: "diagonal dominance certificates",
    8: "boundedness checks and bit-length guard",
    9: "all-ones non-approximation witness",
}

_outcomes: dict[int, list[tuple[str, bool]]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    m = CRITERION_PATTERN.search(report.nodeid)
    if m:
        _outcomes.setdefault(int(m.group(1)), []).append(
            (report.nodeid, report.passed)
        )


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_outcomes):
        parts = _outcomes[num]
        verdict = "PASS" if all(ok for _, ok in parts) else "FAIL"
        title = TITLES.get(num, "")
        terminalreporter.write_line(f"criterion {num}: {verdict} - {title}")
