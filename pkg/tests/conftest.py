import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from ttda.homology.rips import BACKENDS

settings.register_profile(
    "ci", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

AVAILABLE_BACKENDS = sorted(BACKENDS)


@pytest.fixture(params=AVAILABLE_BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# acceptance reporting: one line per criterion, printed after the run
_ACCEPTANCE = {}


def record_acceptance(cid: str, passed: bool, detail: str, skipped: bool = False):
    _ACCEPTANCE[cid] = ("SKIP" if skipped else "PASS" if passed else "FAIL", detail)


@pytest.fixture
def acceptance():
    return record_acceptance


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    key = lambda c: int(c[1:]) if c[1:].isdigit() else 0
    for cid in sorted(_ACCEPTANCE, key=key):
        status, detail = _ACCEPTANCE[cid]
        terminalreporter.write_line(f"{cid}: {status} {detail}")
