import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from adtnc import fixture
from adtnc.netmodel import CodeAssignment

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def fig2():
    return fixture("fig2")


def fig2_beta(net, b69=1, b47=1, b37=0, b610=0):
    """Betas of the example network; the unused slots (into e8, out of e5) stay zero."""
    p = net.port
    return {
        (p("e3"), p("e7")): b37,
        (p("e4"), p("e7")): b47,
        (p("e6"), p("e9")): b69,
        (p("e6"), p("e10")): b610,
    }


def fig2_identity_code(net, **betas):
    """alpha sends X1 on e1 and X2 on e2; T reads Z1 off e11 and Z2 off e12."""
    p = net.port
    return CodeAssignment(
        beta=fig2_beta(net, **betas),
        alpha={(0, p("e1")): 1, (1, p("e2")): 1},
        eps={(p("e11"), 0): 1, (p("e12"), 1): 1},
    )


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# acceptance criteria report one line each at the end of the session
_criteria: dict[int, tuple[str, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    n, text = mark.args
    detail = dict(item.user_properties).get("detail", "")
    if rep.when == "call" or n not in _criteria:
        _criteria[n] = ("PASS" if rep.passed else "FAIL", text, detail)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        status, text, detail = _criteria[n]
        line = f"[{status}] {n:>2}. {text}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
