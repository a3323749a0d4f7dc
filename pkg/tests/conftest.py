import pytest

CRITERIA = {
    1: "identity suite n<=3",
    2: "pi is a homomorphism",
    3: "degree-zero preimages",
    4: "Fock decomposition n=2 R=5",
    5: "F_iE_i acts by [mu_i;1][mu_(i+1);0]",
    6: "mu round trip and phi relations",
    7: "highest weight predicate vs determinants",
    8: "L(q+1) golden values",
    9: "root partition closure",
    10: "kernel of pi annihilates windows",
}

_outcomes: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number k")


def pytest_runtest_logreport(report):
    k = getattr(report, "criterion", None)
    if k is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _outcomes.setdefault(k, []).append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep.criterion = m.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k, name in CRITERIA.items():
        res = _outcomes.get(k)
        if res is None:
            status = "NOT RUN"
        elif all(r == "passed" for r in res):
            status = "PASS"
        else:
            status = "FAIL"
        tr.write_line(f"criterion {k:2d} [{name}]: {status}")
