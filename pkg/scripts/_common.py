"""Reference parameters shared by the experiment scripts."""

import math

from coldmech.params import SystemParams, derive_collective_mode, omega_from_temperature

TWO_PI = 2 * math.pi

REFERENCE = SystemParams(
    nEff=5e4,
    g0=TWO_PI * 10e6,
    deltaCA=TWO_PI * 100e9,
    kappa=TWO_PI * 0.66e6,
    omegaZ=omega_from_temperature(2e-6),
)


def reference_mode():
    return derive_collective_mode(REFERENCE)
