import numpy as np
import pytest

from biglide.dataset import IFW


@pytest.fixture(scope="session")
def ds():
    return IFW


@pytest.fixture(scope="session")
def geom(ds):
    return ds.geometry()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_spd(rng, n, cond=1e3):
    Q, _ = np.linalg.qr(rng.normal(size=(n, n)))
    w = np.logspace(0, np.log10(cond), n)
    return Q @ np.diag(w) @ Q.T


def interior_points(g, n, rng, margin=0.02):
    from biglide.mechanism import workspace_bounds
    x_min, x_max, d = workspace_bounds(g)
    return rng.uniform(x_min + margin * d, x_max - margin * d, n)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
