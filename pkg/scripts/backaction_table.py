"""Heating and cooling rates and the granularity across detunings."""

import argparse

import numpy as np

from coldmech.backaction import backaction_rates, sensitivity_backaction_mismatch
from coldmech.params import calibrate_g0, granularity_scan
from coldmech.statics import DriveCondition

from _common import REFERENCE, TWO_PI, reference_mode


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--photons", type=float, default=1.0)
    ap.add_argument("--points", type=int, default=21)
    args = ap.parse_args()

    mode, k = reference_mode(), REFERENCE.kappa
    print("granularity at reference detuning: %.4f" % mode.granularity)
    print("\n%10s %14s %14s %14s" % ("delta/k", "diffusion", "dynamical", "steady n"))
    for x in np.linspace(-3, 3, args.points):
        r = backaction_rates(DriveCondition(x * k, 0.0, k), mode, args.photons)
        steady = "diverges" if r.divergent else "%.4g" % r.steadyPhonons
        print("%10.3f %14.4e %14.4e %14s" % (x, r.diffusion, r.dynamical, steady))

    grid = np.linspace(-5, 5, 101) * k
    for ratio in (1e-4, 1e-3, 1e-2):
        m = sensitivity_backaction_mismatch(grid, mode, args.photons, ratio * k, k)
        print("omegaZ/kappa = %.0e: sensitivity vs backaction mismatch %.3e" % (ratio, m))

    cal = calibrate_g0(REFERENCE, TWO_PI * 27e9)
    print("\ncalibrated g0/2pi = %.4g Hz gives epsilon = 1 at 27 GHz" % (cal.g0 / TWO_PI))
    freqs = np.geomspace(5e9, 500e9, 8)
    for dl, eps, granular in granularity_scan(cal, TWO_PI * freqs):
        print("  Delta_ca/2pi = %8.3g Hz  epsilon = %7.4f  %s" % (dl / TWO_PI, eps, "granular" if granular else ""))


if __name__ == "__main__":
    main()
