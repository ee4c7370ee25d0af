import mpmath
import pytest

from p3rat.gaussian import GR

# Library calls manage their own working precision internally; this ambient
# setting only keeps test-side comparison arithmetic from rounding at the
# default 53 bits.
mpmath.mp.prec = 320

# the parameter values exercised across the suite
M_SET = [GR(0), GR(1), GR("1/2"), GR("4/5*i")]


@pytest.fixture(scope="session")
def m_set():
    return M_SET


def mpf_tol(exp10):
    return mpmath.mpf(10) ** exp10
