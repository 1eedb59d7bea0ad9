"""
Radiation-pressure fluctuations acting on the collective mode.

Photon-number spectral densities at the two mechanical sidebands drive
the mean phonon number through

    d<n>/dt = kappa^2 eps^2 [S_minus + (S_minus - S_plus) <n>]

with S_minus evaluated at (Delta_pc - wz) and S_plus at (Delta_pc + wz).
Cooling therefore needs Delta_pc < 0. Rates are in rad/s.
"""

import warnings
from dataclasses import dataclass

from .numerics import integrate_linear_ode
from .params import CONSTANTS
from .statics import DriveCondition


@dataclass(frozen=True)
class SpectralPair:
    sMinus: float
    sPlus: float
    meanPhotons: float


@dataclass(frozen=True)
class BackactionRates:
    diffusion: float
    dynamical: float
    steadyPhonons: float = None

    @property
    def divergent(self):
        """True in the amplifying (or undamped) regime with no steady state."""
        return self.steadyPhonons is None


def spectral_densities(d, meanPhotons, omegaZ):
    if meanPhotons < 0:
        raise ValueError("meanPhotons must be >= 0")
    k = d.kappa
    s_minus = 2.0 * meanPhotons * k / (k ** 2 + (d.deltaPC - omegaZ) ** 2)
    s_plus = 2.0 * meanPhotons * k / (k ** 2 + (d.deltaPC + omegaZ) ** 2)
    return SpectralPair(s_minus, s_plus, meanPhotons)


def _coupling_sq(mode, c):
    # kappa^2 eps^2 = (F zHo / hbar)^2, independent of kappa
    return (mode.perPhotonForce * mode.zHo / c.hbar) ** 2


def _rate_coefficients(d, mode, meanPhotons, c):
    s = spectral_densities(d, meanPhotons, mode.omegaZ)
    g2 = _coupling_sq(mode, c)
    return g2 * s.sMinus, g2 * (s.sMinus - s.sPlus), s


def backaction_rates(d, mode, meanPhotons, c=CONSTANTS):
    diffusion, dynamical, s = _rate_coefficients(d, mode, meanPhotons, c)
    steady = None
    if dynamical < 0:
        steady = s.sMinus / (s.sPlus - s.sMinus)
    return BackactionRates(diffusion, dynamical, steady)


def energy_rate(phonons, d, mode, meanPhotons, c=CONSTANTS):
    if phonons < 0:
        raise ValueError("phonons must be >= 0")
    diffusion, dynamical, _ = _rate_coefficients(d, mode, meanPhotons, c)
    return diffusion + dynamical * phonons


def evolve_phonons(n0, t, d, mode, meanPhotons, c=CONSTANTS):
    """Mean phonon number after time ``t`` from the closed-form solution."""
    if n0 < 0:
        raise ValueError("n0 must be >= 0")
    diffusion, dynamical, _ = _rate_coefficients(d, mode, meanPhotons, c)
    return max(integrate_linear_ode(diffusion, dynamical, n0, t), 0.0)


def field_response(deltaZ, d, mode, c=CONSTANTS):
    """First-order fractional change E_sig/E_0 of the intracavity field for a
    displacement ``deltaZ``.
    """
    shift = mode.perPhotonForce * deltaZ / c.hbar
    if abs(shift) > 0.1 * d.kappa:
        warnings.warn("cavity shift %.3g exceeds 0.1 kappa; first-order response "
                      "is unreliable" % (shift / d.kappa), RuntimeWarning)
    return 1j / (d.kappa - 1j * d.deltaPC) * shift


def sensitivity_backaction_mismatch(deltas, mode, meanPhotons, omegaZ, kappa,
                                    deltaZ=None, c=CONSTANTS):
    """Largest gap between the normalised displacement sensitivity
    |E_sig/E_0|^2 and the normalised diffusion spectrum S_minus over
    ``deltas``, each profile divided by its value at Delta_pc = 0.
    """
    if omegaZ / kappa > 1e-2:
        raise ValueError("check only meaningful for omegaZ/kappa <= 1e-2")
    if deltaZ is None:
        deltaZ = 1e-3 * c.hbar * kappa / abs(mode.perPhotonForce)

    def profiles(dpc):
        d = DriveCondition(dpc, 0.0, kappa)
        a = abs(field_response(deltaZ, d, mode, c)) ** 2
        b = spectral_densities(d, meanPhotons, omegaZ).sMinus
        return a, b

    a0, b0 = profiles(0.0)
    worst = 0.0
    for dpc in deltas:
        a, b = profiles(dpc)
        worst = max(worst, abs(a / a0 - b / b0))
    return worst

