import numpy as np
import pytest

from tensorring import constructs
from tensorring.exactla import FieldSpec
from tensorring.tring import tensor_powers

F2 = FieldSpec(2)
F3 = FieldSpec(3)


@pytest.fixture(scope="session")
def qnak():
    """Cyclic Nakayama kQ/J^2 on three vertices with M = R e_1 (x) e_3 R over F_2."""
    r, m = constructs.example_qnak(F2, 3, 2, 1, 3)
    return tensor_powers(r, m)


@pytest.fixture(scope="session")
def a3():
    r, m = constructs.hereditary_a3(F3)
    return tensor_powers(r, m)


@pytest.fixture(scope="session")
def chain():
    r, m = constructs.semisimple_chain(F2)
    return tensor_powers(r, m)


@pytest.fixture(scope="session")
def torfail():
    r, m = constructs.tor_failure_example(F2)
    return tensor_powers(r, m)


@pytest.fixture(params=["qnak", "a3", "chain"])
def instance(request):
    return request.getfixturevalue(request.param)


def brute_vectors(n, p):
    """All vectors of F_p^n as rows."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.meshgrid(*[np.arange(p)] * n, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)


# -- acceptance summary -------------------------------------------------------

_CRITERIA = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance" in report.nodeid and name.startswith("test_criterion_") and report.when == "call":
        lines = [l for l in report.capstdout.splitlines() if l.startswith("criterion ")]
        _CRITERIA[int(name.split("_")[2])] = (report.outcome, lines[-1] if lines else name)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        outcome, line = _CRITERIA[k]
        if not line.startswith("criterion "):
            line = f"criterion {k}: {'PASS' if outcome == 'passed' else 'FAIL'}  {line}"
        terminalreporter.write_line(line)
