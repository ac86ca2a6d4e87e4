import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from angdil.mapping import Mapping, builtin_suite, wirtinger_to_polar

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SUITE = builtin_suite()


class Bulge(Mapping):
    """f(z) = (z + eps (z^2 + |z|^2) / 2) / (1 + eps): a non-radial disk map for strict cases.

    Images of circles are not circles, so the isoperimetric and Hoelder steps
    are strict.  Jets come from the Wirtinger pair f_z = (1 + eps z + eps zbar / 2) / (1 + eps),
    f_zbar = eps z / (2 (1 + eps)).
    """

    family = "bulge"

    def __init__(self, eps=0.2):
        self.eps = eps

    def jets(self, r, theta):
        r = np.asarray(r, dtype=float)
        theta = np.asarray(theta, dtype=float)
        z = r * np.exp(1j * theta)
        e = self.eps
        value = (z + e * (z * z + np.abs(z) ** 2) / 2) / (1 + e)
        f_z = (1 + e * z + e * np.conj(z) / 2) / (1 + e)
        f_zbar = e * z / (2 * (1 + e))
        d_r, d_theta = wirtinger_to_polar(f_z, f_zbar, r, theta)
        return value, d_r, d_theta


@pytest.fixture(params=sorted(SUITE), ids=sorted(SUITE))
def family(request):
    return SUITE[request.param]


@pytest.fixture
def bulge():
    return Bulge(0.2)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
