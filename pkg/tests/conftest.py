import math

import pytest

from coldmech.params import SystemParams, derive_collective_mode, omega_from_temperature

TWO_PI = 2 * math.pi


def rk4(rhs, y0, t, steps):
    """Fixed-step classical Runge-Kutta; independent check on closed forms."""
    h = t / steps
    y = y0
    for _ in range(steps):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * h * k1)
        k3 = rhs(y + 0.5 * h * k2)
        k4 = rhs(y + h * k3)
        y += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
    return y


@pytest.fixture
def params():
    return SystemParams(
        nEff=5e4,
        g0=TWO_PI * 10e6,
        deltaCA=TWO_PI * 100e9,
        kappa=TWO_PI * 0.66e6,
        omegaZ=omega_from_temperature(2e-6),
    )


@pytest.fixture
def mode(params):
    return derive_collective_mode(params)


def pytest_terminal_summary(terminalreporter):
    acceptance = __import__("sys").modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), parts in sorted(acceptance.RESULTS.items()):
        ok = all(passed for _, passed in parts)
        failed = [name for name, passed in parts if not passed]
        line = "criterion %2d: %s  %s" % (number, "PASS" if ok else "FAIL", title)
        if failed:
            line += "  [failed: %s]" % ", ".join(failed)
        terminalreporter.write_line(line)
