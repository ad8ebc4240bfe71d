import pathlib

import numpy as np
import pytest

from singcat.algebra import load_file
from singcat.modrep import module_from_spec

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

# filled in by test_acceptance.py, printed at the end of the run
ACCEPTANCE = {}


class Fixture:
    def __init__(self, name):
        self.path = FIXTURES / f"{name}.alg"
        f = load_file(self.path)
        self.algebra = f.algebra
        self.modules = {k: module_from_spec(f.algebra, s) for k, s in f.modules.items()}

    def __getitem__(self, k):
        return self.modules[k]


@pytest.fixture(scope="session")
def r2():
    return Fixture("r2")


@pytest.fixture(scope="session")
def r3():
    return Fixture("r3")


@pytest.fixture(scope="session")
def a2():
    return Fixture("a2")


@pytest.fixture(scope="session")
def r2q():
    return Fixture("r2q")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
