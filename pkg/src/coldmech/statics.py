"""
Conservative optomechanics: force, potential, self-consistent equilibria,
bistability and quasi-static transmission sweeps.

With adiabatic cavity following the collective coordinate Z feels

    U(Z) = 1/2 M wz^2 Z^2 + nMax hbar kappa arctan((Delta_pc - F Z/hbar)/kappa)

In the reduced variables x = F Z/(hbar kappa), delta = Delta_pc/kappa,
beta = F^2 nMax/(M wz^2 hbar kappa) the equilibria solve the cubic
x (1 + (delta - x)^2) = beta, whose roots lie in [0, beta].
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .numerics import find_real_roots
from .params import CONSTANTS

ROOT_GRID_POINTS = 4096
CONTINUITY_FRACTION = 0.2


@dataclass(frozen=True)
class DriveCondition:
    deltaPC: float
    nMax: float
    kappa: float

    def __post_init__(self):
        if not self.nMax >= 0:
            raise ValueError("nMax must be >= 0")
        if not self.kappa > 0:
            raise ValueError("kappa must be > 0")


@dataclass(frozen=True)
class Equilibrium:
    z: float
    photons: float
    stable: bool
    omegaEff: float = None


@dataclass
class EquilibriumSet:
    solutions: list = field(default_factory=list)

    def __len__(self):
        return len(self.solutions)

    @property
    def stable(self):
        return [s for s in self.solutions if s.stable]


@dataclass(frozen=True)
class SweepPoint:
    deltaPC: float
    z: float
    photons: float
    branchJump: bool


@dataclass
class SweepTrace:
    direction: str
    points: list = field(default_factory=list)


def opto_force(z, photons, mode):
    return -mode.mass * mode.omegaZ ** 2 * z + mode.perPhotonForce * photons


def _cavity_detuning(z, d, mode, c=CONSTANTS):
    return d.deltaPC - mode.perPhotonForce * z / c.hbar


def intracavity_photons(z, d, mode, c=CONSTANTS):
    u = _cavity_detuning(z, d, mode, c)
    return d.nMax * d.kappa ** 2 / (d.kappa ** 2 + u ** 2)


def optomech_potential(z, d, mode, c=CONSTANTS):
    u = _cavity_detuning(z, d, mode, c)
    return (0.5 * mode.mass * mode.omegaZ ** 2 * z ** 2
            + d.nMax * c.hbar * d.kappa * np.arctan(u / d.kappa))


def potential_curvature(z, d, mode, c=CONSTANTS):
    """Analytic U''(z)."""
    u = _cavity_detuning(z, d, mode, c) / d.kappa
    light = (2.0 * u * mode.perPhotonForce ** 2 * d.nMax
             / (c.hbar * d.kappa * (1.0 + u ** 2) ** 2))
    return mode.mass * mode.omegaZ ** 2 - light


def reduced_drive(d, mode, c=CONSTANTS):
    """Dimensionless (delta, beta) for a drive condition."""
    delta = d.deltaPC / d.kappa
    beta = (mode.perPhotonForce ** 2 * d.nMax
            / (mode.mass * mode.omegaZ ** 2 * c.hbar * d.kappa))
    return delta, beta


def fixed_point_residual(x, delta, beta):
    return x * (1.0 + (delta - x) ** 2) - beta


def reduced_roots(delta, beta, grid_points=ROOT_GRID_POINTS):
    """Real roots x of x (1 + (delta - x)^2) = beta, ascending."""
    lo = min(0.0, delta) - beta - 1.0
    hi = max(0.0, delta) + beta + 1.0
    return find_real_roots(lambda x: fixed_point_residual(x, delta, beta),
                           lo, hi, grid_points)


def reduced_curvature(x, delta, beta):
    """U''/(M wz^2) at reduced position x."""
    u = delta - x
    return 1.0 - 2.0 * u * beta / (1.0 + u * u) ** 2


def optical_spring_shift(z, d, mode, c=CONSTANTS):
    """Effective mechanical frequency sqrt(U''/M) at a stable point."""
    curvature = potential_curvature(z, d, mode, c)
    if curvature <= 0:
        raise ValueError("U'' = %.3e <= 0: not a stable equilibrium" % curvature)
    return math.sqrt(curvature / mode.mass)


def equilibria(d, mode, c=CONSTANTS):
    delta, beta = reduced_drive(d, mode, c)
    if mode.perPhotonForce == 0:
        xs, to_z = [0.0], lambda x: 0.0
    else:
        xs = reduced_roots(delta, beta)
        scale = c.hbar * d.kappa / mode.perPhotonForce
        to_z = lambda x: x * scale
    out = []
    for x in xs:
        z = to_z(x)
        stable = reduced_curvature(x, delta, beta) > 0
        omega = optical_spring_shift(z, d, mode, c) if stable else None
        out.append(Equilibrium(z, intracavity_photons(z, d, mode, c), stable, omega))
    return EquilibriumSet(out)


def _stable_spacing(eqs):
    zs = [s.z for s in eqs.stable]
    return max(zs) - min(zs) if len(zs) > 1 else 0.0


def transmission_sweep(schedule, direction, mode, c=CONSTANTS):
    """Follow a stable branch quasi-statically across a detuning schedule.

    ``direction`` is ``"up"`` (deltaPC increasing) or ``"down"``. The trace
    starts on the stable equilibrium with the smallest |z|, then takes the
    stable solution nearest the previous z. A step is flagged as a branch
    jump when that nearest solution moved by more than a fifth of the
    separation between coexisting stable branches, which happens only when
    the occupied branch has disappeared.
    """
    if direction not in ("up", "down"):
        raise ValueError("direction must be 'up' or 'down'")
    trace = SweepTrace(direction)
    if not schedule:
        return trace
    deltas = [d.deltaPC for d in schedule]
    steps = np.diff(deltas)
    if (direction == "up" and np.any(steps < 0)) or (direction == "down" and np.any(steps > 0)):
        raise ValueError("schedule is not monotone for a %s sweep" % direction)
    if len({(d.nMax, d.kappa) for d in schedule}) > 1:
        raise ValueError("nMax and kappa must be fixed along a sweep")

    prev_z = None
    prev_spacing = 0.0
    for d in schedule:
        eqs = equilibria(d, mode, c)
        stable = eqs.stable
        spacing = _stable_spacing(eqs)
        if prev_z is None:
            current = min(stable, key=lambda s: abs(s.z))
            jump = False
        else:
            current = min(stable, key=lambda s: abs(s.z - prev_z))
            tolerance = CONTINUITY_FRACTION * max(spacing, prev_spacing)
            jump = abs(current.z - prev_z) > tolerance and max(spacing, prev_spacing) > 0
        trace.points.append(SweepPoint(d.deltaPC, current.z, current.photons, jump))
        prev_z = current.z
        prev_spacing = spacing
    return trace


def sweep_schedule(delta_lo, delta_hi, points, nMax, kappa, direction):
    """Evenly spaced drive conditions with deltaPC/kappa from lo to hi."""
    deltas = np.linspace(delta_lo, delta_hi, points) * kappa
    if direction == "down":
        deltas = deltas[::-1]
    return [DriveCondition(float(x), nMax, kappa) for x in deltas]


def bistability_map(delta_grid, nmax_grid, mode, kappa, c=CONSTANTS):
    """Equilibrium counts; rows follow ``nmax_grid``, columns ``delta_grid``."""
    if len(delta_grid) == 0 or len(nmax_grid) == 0:
        raise ValueError("grids must be nonempty")
    counts = np.zeros((len(nmax_grid), len(delta_grid)), dtype=int)
    for i, n in enumerate(nmax_grid):
        for j, dpc in enumerate(delta_grid):
            counts[i, j] = len(equilibria(DriveCondition(dpc, n, kappa), mode, c))
    return counts


def nmax_for_beta(beta, mode, kappa, c=CONSTANTS):
    """Resonant photon number giving reduced drive strength ``beta``."""
    return beta * mode.mass * mode.omegaZ ** 2 * c.hbar * kappa / mode.perPhotonForce ** 2
