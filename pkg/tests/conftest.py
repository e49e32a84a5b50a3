import json
import os
import sys
from pathlib import Path

import pytest

TESTS = Path(__file__).resolve().parent
ROOT = TESTS.parent
sys.path.insert(0, str(TESTS))

# five quotient generators of the F_3 family in reduced 14-coordinates
FAMILY_BASIS_14 = [
    [0, 0, 0, 1, 3, 0, 0, 0, 0, 3, 1, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0],
    [0, 0, 0, 1, 1, 0, 0, 0, -2, 0, -2, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0],
]

# (class, degree, complement degree) for every divisor in the box [-3,3]^5 with degree <= 6
FAMILY_TABLE = [
    ((0, 0, 0, -1, -2), 4, 2),
    ((1, -1, -1, -1, -1), 4, 2),
    ((0, -1, 1, 0, -1), 4, 2),
    ((1, -2, -1, 0, 0), 4, 2),
    ((0, 1, 0, 0, 0), 4, 2),
    ((-1, 1, 1, 0, 0), 4, 2),
    ((0, 0, 0, 0, 1), 4, 2),
    ((0, 0, 0, 1, 1), 4, 2),
    ((-1, 2, 0, 1, 2), 4, 2),
    ((0, 0, 1, -1, -3), 6, 3),
    ((0, 0, -1, 0, 0), 6, 3),
    ((1, -3, 0, 0, 0), 6, 3),
    ((-1, 3, 0, 1, 3), 6, 3),
]


def input_path(name):
    return str(ROOT / "inputs" / f"{name}.json")


@pytest.fixture(scope="session")
def ctx3():
    from nsdivisor import PolarizedContext
    return PolarizedContext(3)


@pytest.fixture(scope="session")
def family():
    from nsdivisor import load_document
    with open(input_path("family_f3")) as fh:
        return load_document(json.load(fh))


@pytest.fixture(scope="session")
def product():
    from nsdivisor import diagonal_period_matrix, ns_basis
    tau = diagonal_period_matrix(3)
    return tau, ns_basis(tau)


@pytest.fixture(scope="session")
def generic():
    from nsdivisor import generic_period_matrix, ns_basis
    tau = generic_period_matrix(3)
    return tau, ns_basis(tau)


@pytest.fixture(autouse=True)
def _single_thread(monkeypatch):
    monkeypatch.delenv("NS_DIVISOR_THREADS", raising=False)
    yield


def pytest_report_header(config):
    return f"NS_DIVISOR_THREADS={os.environ.get('NS_DIVISOR_THREADS', 'unset')}"


ACCEPTANCE_LINES = {}


@pytest.fixture
def acceptance(request):
    """Record one summary line per acceptance criterion; printed at the end of the run."""
    record = {}
    yield record
    rep = getattr(request.node, "rep_call", None)
    passed = rep is not None and rep.passed
    key = record.get("id", request.node.name)
    detail = record.get("detail", "")
    ACCEPTANCE_LINES[key] = f"{'PASS' if passed else 'FAIL'}  {key}  {detail}".rstrip()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: int(k.split()[1].rstrip(":"))):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
