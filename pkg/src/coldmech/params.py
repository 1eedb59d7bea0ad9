"""
Physical inputs and the collective mechanical mode derived from them.

All quantities are SI with angular frequencies in rad/s.
"""

import math
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = 1.054571817e-34
    kB: float = 1.380649e-23
    atomMassRb87: float = 1.44316e-25

    def __post_init__(self):
        for name in ("hbar", "kB", "atomMassRb87"):
            if not getattr(self, name) > 0:
                raise ValueError("%s must be positive" % name)


CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class SystemParams:
    """Primitive atom, cavity and trap inputs.

    ``deltaCA`` is the signed cavity-atom detuning; ``kappa`` the cavity
    half-linewidth; ``omegaZ`` the axial trap frequency.
    """

    nEff: float
    g0: float
    deltaCA: float
    kappa: float
    omegaZ: float
    lambdaProbe: float = 780e-9
    lambdaTrap: float = 850e-9

    def __post_init__(self):
        if not self.nEff >= 0:
            raise ValueError("nEff must be >= 0")
        for name in ("g0", "kappa", "omegaZ", "lambdaProbe", "lambdaTrap"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError("%s must be positive and finite" % name)
        if self.deltaCA == 0 or not math.isfinite(self.deltaCA):
            raise ValueError("deltaCA must be nonzero and finite")

    @property
    def kP(self):
        return 2 * math.pi / self.lambdaProbe

    @property
    def kT(self):
        return 2 * math.pi / self.lambdaTrap


@dataclass(frozen=True)
class CollectiveMode:
    mass: float
    omegaZ: float
    zHo: float
    perPhotonForce: float
    granularity: float


def derive_per_photon_force(p, c=CONSTANTS):
    """Signed force per intracavity photon, N_eff hbar k_p g0^2 / Delta_ca."""
    if p.deltaCA == 0:
        raise ValueError("deltaCA = 0 is resonant tuning; the dispersive force is undefined")
    return p.nEff * c.hbar * p.kP * p.g0 ** 2 / p.deltaCA


def harmonic_length(mass, omega, c=CONSTANTS):
    return math.sqrt(c.hbar / (2.0 * mass * omega))


def derive_collective_mode(p, c=CONSTANTS):
    if p.nEff == 0:
        raise ValueError("nEff = 0: there is no collective mode")
    mass = p.nEff * c.atomMassRb87
    z_ho = harmonic_length(mass, p.omegaZ, c)
    force = derive_per_photon_force(p, c)
    eps = abs(force) * z_ho / (c.hbar * p.kappa)
    return CollectiveMode(mass=mass, omegaZ=p.omegaZ, zHo=z_ho,
                          perPhotonForce=force, granularity=eps)


def granularity_scan(p, detunings, c=CONSTANTS):
    """Granularity parameter over a list of cavity-atom detunings.

    Returns ``(deltaCA, epsilon, granular)`` tuples, ``granular`` being
    ``epsilon > 1``.
    """
    out = []
    for delta in detunings:
        if delta == 0:
            raise ValueError("detuning 0 in granularity scan")
        eps = derive_collective_mode(replace(p, deltaCA=delta), c).granularity
        out.append((delta, eps, eps > 1.0))
    return out


def calibrate_g0(p, deltaCA, target=1.0, c=CONSTANTS):
    """Return ``p`` with g0 rescaled so that epsilon(deltaCA) == target.

    The granularity is proportional to g0^2, so one rescale is exact up to
    rounding. The returned params keep the original ``deltaCA``.
    """
    eps = derive_collective_mode(replace(p, deltaCA=deltaCA), c).granularity
    return replace(p, g0=p.g0 * math.sqrt(target / eps))


def photon_impulse_displacement(mode, kappa):
    """Momentum kick of one photon during its ~1/(2 kappa) residence time,
    and the resulting collective displacement.
    """
    dp = mode.perPhotonForce / (2.0 * kappa)
    dz = dp / (mode.mass * mode.omegaZ)
    return dp, dz


def omega_from_temperature(temperature, c=CONSTANTS):
    """Angular frequency with hbar*omega = kB*T."""
    return c.kB * temperature / c.hbar
