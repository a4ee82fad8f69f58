import sys

import numpy as np
import pytest

from photonloc import poincare as pc
from photonloc.exprcore import SamplePlan, sample_points
from photonloc.operators import LinOp


@pytest.fixture(scope="session")
def points():
    return sample_points(SamplePlan(seed=0, count=64))


@pytest.fixture(scope="session")
def base_ops() -> dict[str, LinOp]:
    """Single-component operators from the original representation and the position operators."""
    cat = pc.operator_catalog()
    names = ["P0", "P1", "P2", "P3", "M1", "M2", "M3", "N1", "N2", "N3",
             "Q1", "Q2", "Q3", "pryce-1", "pryce-2", "pryce-3", "helicity",
             "L1", "K2", "n3", "S1", "hawton-1"]
    return {n: cat[n][0] for n in names}


@pytest.fixture(scope="session")
def random_fns():
    rng = np.random.default_rng(1234)
    return [pc.random_wavefn(rng) for _ in range(5)]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
