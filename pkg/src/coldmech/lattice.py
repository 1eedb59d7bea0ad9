"""
1D Bloch bands of the trapping lattice and probe excitation weights.

Energies are in recoil units E_r = hbar^2 kT^2 / 2m and wavenumbers in units
of kT. The lattice potential is V(z) = depth * E_r * sin^2(kT z), so the
reciprocal lattice vector is 2 kT and plane waves e^{i(q + 2n) kT z} span the
Bloch space at quasimomentum q.
"""

import math
from dataclasses import dataclass

import numpy as np

from .numerics import hermitian_eigen

DEFAULT_CUTOFF = 16
DEFAULT_QGRID = 128
DEFAULT_NBANDS = 5


@dataclass(frozen=True)
class LatticeSpec:
    depth: float
    kT: float = 2 * math.pi / 850e-9
    kP: float = 2 * math.pi / 780e-9
    planewaveCutoff: int = DEFAULT_CUTOFF

    def __post_init__(self):
        if not self.depth >= 0:
            raise ValueError("depth must be >= 0")
        if self.planewaveCutoff < 8:
            raise ValueError("planewaveCutoff must be >= 8")
        if not (self.kT > 0 and self.kP > 0):
            raise ValueError("wavenumbers must be positive")

    @property
    def dim(self):
        return 2 * self.planewaveCutoff + 1

    @property
    def indices(self):
        c = self.planewaveCutoff
        return np.arange(-c, c + 1)


@dataclass
class BandStructure:
    quasimomenta: np.ndarray   # (nq,), units of kT
    energies: np.ndarray       # (nBands, nq), units of E_r
    blochCoefficients: np.ndarray  # (nBands, nq, dim)


@dataclass
class ExcitationWeights:
    depth: float
    quasimomentum: float
    bands: list
    weights: np.ndarray


def fold_to_first_bz(k):
    """Split ``k`` (units of kT) into q in (-1, 1] and an integer fold with
    k = q + 2*fold.
    """
    fold = math.ceil((k - 1.0) / 2.0)
    q = k - 2 * fold
    # guard rounding at the zone edge
    if q <= -1.0:
        fold -= 1
        q = k - 2 * fold
    elif q > 1.0:
        fold += 1
        q = k - 2 * fold
    return q, int(fold)


def q_grid(n):
    """Uniform grid of ``n`` quasimomenta on (-1, 1], including +1."""
    if n < 2:
        raise ValueError("qGrid must be >= 2")
    return -1.0 + 2.0 * np.arange(1, n + 1) / n


def bloch_hamiltonian(spec, q):
    if not -1.0 < q <= 1.0:
        raise ValueError("q = %r lies outside (-1, 1]; fold it first" % q)
    n = spec.indices
    h = np.diag((q + 2.0 * n) ** 2 + 0.5 * spec.depth).astype(complex)
    off = -0.25 * spec.depth * np.ones(spec.dim - 1)
    h += np.diag(off, 1) + np.diag(off, -1)
    return h


def band_structure(spec, qGrid=DEFAULT_QGRID, nBands=DEFAULT_NBANDS):
    if nBands > 2 * spec.planewaveCutoff:
        raise ValueError("nBands must not exceed 2*cutoff")
    qs = q_grid(qGrid)
    energies = np.empty((nBands, len(qs)))
    coeffs = np.empty((nBands, len(qs), spec.dim), dtype=complex)
    for j, q in enumerate(qs):
        values, vectors = hermitian_eigen(bloch_hamiltonian(spec, q))
        energies[:, j] = values[:nBands]
        coeffs[:, j, :] = vectors[:, :nBands].T
    return BandStructure(qs, energies, coeffs)


def bands_at(spec, q, nBands):
    """Lowest ``nBands`` energies and coefficient rows at one quasimomentum."""
    values, vectors = hermitian_eigen(bloch_hamiltonian(spec, q))
    return values[:nBands], vectors[:, :nBands].T


def probe_quasimomentum(spec):
    """Fold the probe grating wavevector 2 kP into the first zone."""
    return fold_to_first_bz(2.0 * spec.kP / spec.kT)


def excitation_weights(spec, nBands=DEFAULT_NBANDS):
    """Relative probabilities that cos(2 kP z) lifts the q=0 ground state
    into excited bands 1..nBands at the probe quasimomentum.

    Only the e^{+2i kP z} half of the cosine reaches +q*; it shifts the
    plane-wave index of the ground-state coefficients by the fold count.
    Band 0 at q* (a static density grating, no motional excitation) is not
    counted among the excited bands.
    """
    if nBands < 3:
        raise ValueError("nBands must be >= 3")
    _, ground = bands_at(spec, 0.0, 1)
    ground = ground[0]
    qstar, fold = probe_quasimomentum(spec)
    _, excited = bands_at(spec, qstar, nBands + 1)

    # shifted[m] = ground[m - fold], zero where it falls off the basis
    shifted = np.zeros_like(ground)
    if fold >= 0:
        shifted[fold:] = ground[:spec.dim - fold]
    else:
        shifted[:fold] = ground[-fold:]
    elements = 0.5 * (excited[1:].conj() @ shifted)
    strengths = np.abs(elements) ** 2
    return ExcitationWeights(spec.depth, qstar, list(range(1, nBands + 1)),
                             strengths / strengths.sum())


def deep_lattice_gap(depth):
    """Harmonic estimate of the band 0 -> 1 spacing, 2*sqrt(depth) E_r."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    return 2.0 * math.sqrt(depth)


def exact_gap(spec, q=0.0):
    values, _ = bands_at(spec, q, 2)
    return values[1] - values[0]


def bandwidth(spec, qGrid=32, band=0):
    bs = band_structure(spec, qGrid, band + 1)
    e = bs.energies[band]
    return float(e.max() - e.min())
