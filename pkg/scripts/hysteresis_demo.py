"""Up and down detuning sweeps through the dispersive bistable window."""

import argparse

import numpy as np

from coldmech.statics import nmax_for_beta, reduced_roots, sweep_schedule, transmission_sweep

from _common import REFERENCE, reference_mode


def bistable_window(beta, deltas):
    inside = [d for d in deltas if len(reduced_roots(d, beta)) == 3]
    return (round(float(min(inside)), 3), round(float(max(inside)), 3)) if inside else None


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--beta", type=float, default=8.0)
    ap.add_argument("--delta-min", type=float, default=0.0)
    ap.add_argument("--delta-max", type=float, default=12.0)
    ap.add_argument("--points", type=int, default=401)
    args = ap.parse_args()

    mode, k = reference_mode(), REFERENCE.kappa
    nmax = nmax_for_beta(args.beta, mode, k)
    print("beta = %.3g  ->  nMax = %.4g photons" % (args.beta, nmax))

    window = bistable_window(args.beta, np.linspace(args.delta_min, args.delta_max, 2001))
    print("three-solution window (delta/kappa): %s" % (window,))

    traces = {}
    for direction in ("up", "down"):
        schedule = sweep_schedule(args.delta_min, args.delta_max, args.points, nmax, k, direction)
        traces[direction] = transmission_sweep(schedule, direction, mode)
        jumps = [p.deltaPC / k for p in traces[direction].points if p.branchJump]
        print("%-4s sweep jumps at delta/kappa = %s" % (direction, ["%.3f" % j for j in jumps]))

    print("\n%10s %12s %12s" % ("delta/k", "n_up/nMax", "n_down/nMax"))
    down = {p.deltaPC: p for p in traces["down"].points}
    stride = max(1, args.points // 25)
    for p in traces["up"].points[::stride]:
        print("%10.3f %12.5f %12.5f" % (p.deltaPC / k, p.photons / nmax, down[p.deltaPC].photons / nmax))


if __name__ == "__main__":
    main()
