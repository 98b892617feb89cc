import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from gaussgowers.grid import GridFunction, make_grid

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_function(nt, rng, kind="complex"):
    grid = make_grid(1, nt - 1, relaxed=True)
    assert grid.n_tilde == nt
    if kind == "sign":
        vals = rng.choice([-1.0, 1.0], size=grid.shape)
    elif kind == "unit":
        vals = np.exp(2j * np.pi * rng.random(grid.shape))
    else:
        vals = rng.normal(size=grid.shape) + 1j * rng.normal(size=grid.shape)
    return GridFunction(grid, vals)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# acceptance criteria record one line each; printed in the terminal summary
ACCEPTANCE: dict = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
