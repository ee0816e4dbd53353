import sys
from collections import defaultdict
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large, HealthCheck.filter_too_much],
)
settings.load_profile("default")

CRITERIA = {
    1: "nodal cubic: KH = Z, Z, 0 and the Betti relation",
    2: "I_3..I_8 give Z, Z; tetrahedron gives KH^1 = 0, KH^2 = Z",
    3: "RP^2: H^2 = Z/2 over Z, rank 0 over Q",
    4: "P^1 minus two points: KH_c^1 = Z only; minus one point: all zero",
    5: "property suite (>= 1000 instances per property)",
    6: "Kunneth on {point, banana, I_3, I_4, tetrahedron}^2",
    7: "axioms: smooth resolutions and LES on generated pairs",
    8: "bound_check on the nodal cubic; inconsistent input exits 2",
}

_outcomes: dict[int, list[bool]] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes[marker.args[0]].append(report.outcome == "passed")


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        results = _outcomes.get(n)
        if not results:
            continue
        verdict = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {verdict} ({sum(results)}/{len(results)} checks)  {CRITERIA[n]}")
