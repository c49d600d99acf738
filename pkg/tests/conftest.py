import json
import warnings
from pathlib import Path

import numpy as np
import pytest

from iho.errors import CoverageWarning
from iho.fields import GridSpec
from iho.scaledyn import PhysicalParams

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def ref():
    return json.loads((DATA / "reference_values.json").read_text())


@pytest.fixture(scope="session")
def nat():
    return PhysicalParams()


@pytest.fixture(scope="session")
def grid():
    return GridSpec()


@pytest.fixture(autouse=True)
def _quiet_coverage():
    # the coverage rule is deliberately conservative; tests that care check it explicitly
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CoverageWarning)
        yield


def cplx(pair):
    return complex(pair[0], pair[1])


def relerr(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return np.abs(a - b) / np.maximum(np.abs(b), 1e-300)


# one line per acceptance criterion, filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
