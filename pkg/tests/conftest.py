import math
import sys

import numpy as np
import pytest

from sphconvex import _kernels_py
from sphconvex.generators import gen_cap, gen_orthant, gen_random_polytope, gen_reuleaux, north
from sphconvex.sphere import ToleranceConfig

try:
    from sphconvex import _ckernels
except ImportError:
    _ckernels = None

BACKENDS = [pytest.param(_kernels_py, id="numpy")]
BACKENDS.append(pytest.param(_ckernels, id="cython", marks=pytest.mark.skipif(
    _ckernels is None, reason="compiled kernels not built")))


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def cfg():
    return ToleranceConfig()


@pytest.fixture(scope="session")
def orthant():
    return gen_orthant(3)


@pytest.fixture(scope="session")
def cap_pi5():
    return gen_cap(north(3), math.pi / 5)


@pytest.fixture(scope="session")
def reuleaux60():
    return gen_reuleaux(math.pi / 3)


@pytest.fixture(scope="session")
def reuleaux120():
    return gen_reuleaux(2 * math.pi / 3)


@pytest.fixture(scope="session")
def random_poly():
    return gen_random_polytope(3, 14, 1.1, 5)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for key in sorted(results):
            terminalreporter.write_line(results[key])
