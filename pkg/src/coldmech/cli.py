"""
Command-line scenario runner.

    coldmech <scenario> --config cfg.json [--out PREFIX] [--hz]

Each run writes ``PREFIX_<scenario>.csv`` and a ``PREFIX_<scenario>.json``
sidecar holding the resolved config (rad/s) and the derived collective mode.
Exit codes: 0 success, 2 config error, 3 numerical failure.
"""

import argparse
import csv
import json
import os
import sys
from dataclasses import asdict, replace

import numpy as np

from . import __version__
from .backaction import backaction_rates, spectral_densities
from .config import SCENARIOS, ConfigError, load_config
from .lattice import LatticeSpec, band_structure, excitation_weights
from .numerics import NumericalError
from .params import derive_collective_mode, granularity_scan
from .statics import DriveCondition, bistability_map, sweep_schedule, transmission_sweep

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _render(value):
    if value is None:
        return "nan"
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        # shortest repr that round-trips; nan/inf spelled lowercase
        return repr(float(value))
    return str(value)


def emit_csv(columns, rows, path):
    """Write a header plus rows. Floats use Python's shortest round-trip repr,
    so 0.5 is written as ``0.5``; missing values and NaN become ``nan``.
    """
    rows = list(rows)
    if not rows:
        raise ValueError("refusing to write an empty dataset to %s" % path)
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            if len(row) != len(columns):
                raise ValueError("row width %d does not match %d columns" % (len(row), len(columns)))
            writer.writerow([_render(v) for v in row])
    return path


def _lattice_spec(params, depth, cutoff):
    return LatticeSpec(depth, kT=params.kT, kP=params.kP, planewaveCutoff=cutoff)


def _bands(cfg):
    b = cfg.block
    bs = band_structure(_lattice_spec(cfg.params, b.depth, b.cutoff), b.qGrid, b.nBands)
    rows = [(float(q), band, float(bs.energies[band, j]))
            for j, q in enumerate(bs.quasimomenta) for band in range(b.nBands)]
    return ("q_over_kt", "band_index", "energy_Er"), rows


def _weights(cfg):
    b = cfg.block
    rows = []
    for depth in b.depths:
        w = excitation_weights(_lattice_spec(cfg.params, depth, b.cutoff), b.nBands)
        rows.extend((float(depth), band, float(p)) for band, p in zip(w.bands, w.weights))
    return ("depth_Er", "band_index", "weight"), rows


def _sweep(cfg):
    b = cfg.block
    mode = derive_collective_mode(cfg.params)
    kappa = cfg.params.kappa
    directions = ("up", "down") if b.direction == "both" else (b.direction,)
    rows = []
    for direction in directions:
        schedule = sweep_schedule(b.deltaMin, b.deltaMax, b.points, b.nMax, kappa, direction)
        trace = transmission_sweep(schedule, direction, mode)
        for pt in trace.points:
            norm = pt.photons / b.nMax if b.nMax > 0 else 0.0
            rows.append((pt.deltaPC / kappa, direction, pt.z, norm, pt.branchJump))
    return ("delta_pc_over_kappa", "direction", "z_m", "photons_norm", "branch_jump"), rows


def _map(cfg):
    b = cfg.block
    mode = derive_collective_mode(cfg.params)
    kappa = cfg.params.kappa
    deltas = np.linspace(b.deltaMin, b.deltaMax, b.deltaPoints)
    nmaxes = np.linspace(b.nMaxMin, b.nMaxMax, b.nMaxPoints)
    counts = bistability_map(deltas * kappa, nmaxes, mode, kappa)
    rows = [(float(dl), float(n), int(counts[i, j]))
            for i, n in enumerate(nmaxes) for j, dl in enumerate(deltas)]
    return ("delta_over_kappa", "n_max", "solution_count"), rows


def _backaction(cfg):
    b = cfg.block
    params = cfg.params if b.omegaZ is None else replace(cfg.params, omegaZ=b.omegaZ)
    mode = derive_collective_mode(params)
    kappa = params.kappa
    rows = []
    for dl in np.linspace(b.deltaMin, b.deltaMax, b.points):
        d = DriveCondition(float(dl) * kappa, 0.0, kappa)
        s = spectral_densities(d, b.meanPhotons, mode.omegaZ)
        r = backaction_rates(d, mode, b.meanPhotons)
        rows.append((float(dl), s.sMinus, s.sPlus, r.diffusion, r.dynamical, r.steadyPhonons))
    return ("delta_pc_over_kappa", "s_minus", "s_plus", "diffusion", "dynamical",
            "steady_phonons_or_nan"), rows


def _granularity(cfg):
    rows = granularity_scan(cfg.params, cfg.block.detunings)
    return ("delta_ca_rad_s", "epsilon", "granular"), rows


RUNNERS = {
    "bands": _bands,
    "weights": _weights,
    "sweep": _sweep,
    "map": _map,
    "backaction": _backaction,
    "granularity": _granularity,
}


def _sidecar(cfg):
    mode = None
    if cfg.params.nEff > 0:
        mode = asdict(derive_collective_mode(cfg.params))
    return {
        "config": cfg.to_dict(),
        "collective_mode": mode,
        "run": {"package": "coldmech", "version": __version__},
    }


def run_scenario(cfg):
    """Run one scenario; return the paths written (CSV first, then sidecar)."""
    prefix = cfg.output
    csv_path = "%s_%s.csv" % (prefix, cfg.scenario)
    json_path = "%s_%s.json" % (prefix, cfg.scenario)
    written = []
    try:
        columns, rows = RUNNERS[cfg.scenario](cfg)
        parent = os.path.dirname(csv_path)
        if parent:
            os.makedirs(parent, exist_ok=True)
        written.append(emit_csv(columns, rows, csv_path))
        with open(json_path, "w", encoding="ascii") as fh:
            written.append(json_path)
            json.dump(_sidecar(cfg), fh, indent=2, sort_keys=True, allow_nan=True)
            fh.write("\n")
    except BaseException:
        for path in written:
            if os.path.exists(path):
                os.remove(path)
        raise
    return written


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="JSON scenario config")
    common.add_argument("--out", help="output path prefix (overrides config 'output')")
    common.add_argument("--hz", action="store_true",
                        help="read every frequency in the config as Hz (multiplied by 2*pi)")
    parser = argparse.ArgumentParser(prog="coldmech", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="scenario", required=True)
    for name in SCENARIOS:
        sub.add_parser(name, parents=[common], help="run the %s scenario" % name)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, hz=args.hz)
        if cfg.scenario != args.scenario:
            raise ConfigError("config scenario %r does not match subcommand %r"
                              % (cfg.scenario, args.scenario))
        if args.out:
            cfg = replace(cfg, output=args.out)
    except ConfigError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG
    try:
        paths = run_scenario(cfg)
    except (NumericalError, ValueError, ArithmeticError) as exc:
        print("numerical failure: %s" % exc, file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print("cannot write output: %s" % exc, file=sys.stderr)
        return EXIT_NUMERICAL
    for path in paths:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
