"""Band gaps, bandwidths and probe excitation weights versus lattice depth."""

import argparse

from coldmech.lattice import (
    LatticeSpec,
    bandwidth,
    deep_lattice_gap,
    exact_gap,
    excitation_weights,
    probe_quasimomentum,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depths", type=float, nargs="+",
                    default=[0.01, 1, 2, 5, 10, 15, 25, 50, 100])
    ap.add_argument("--bands", type=int, default=5)
    args = ap.parse_args()

    qstar, fold = probe_quasimomentum(LatticeSpec(0.0))
    print("probe quasimomentum q* = %.5f (fold %d)\n" % (qstar, fold))

    print("%8s %10s %10s %12s" % ("depth", "gap", "2sqrt(V)", "bandwidth"))
    for depth in args.depths:
        spec = LatticeSpec(depth)
        print("%8.2f %10.4f %10.4f %12.4e" % (
            depth, exact_gap(spec), deep_lattice_gap(depth), bandwidth(spec)))

    print("\nexcitation weights, bands 1..%d" % args.bands)
    for depth in args.depths:
        w = excitation_weights(LatticeSpec(depth), args.bands)
        print("%8.2f  " % depth + " ".join("%7.4f" % x for x in w.weights))

    ratio = exact_gap(LatticeSpec(100.0)) / exact_gap(LatticeSpec(25.0))
    print("\ngap(100)/gap(25) = %.4f (harmonic estimate 2)" % ratio)


if __name__ == "__main__":
    main()
