"""
Strict JSON scenario configs.

A config looks like::

    {
      "params": {"nEff": 5e4, "g0": ..., "deltaCA": ..., "kappa": ...,
                 "omegaZ": ..., "lambdaProbe": 7.8e-7, "lambdaTrap": 8.5e-7},
      "scenario": "sweep",
      "sweep": {"deltaMin": 0, "deltaMax": 12, "nMax": 0.5},
      "output": "out/run1"
    }

Frequencies are rad/s unless the caller asks for Hz, in which case every
frequency field is multiplied by 2*pi on load. Detuning ranges in the
sweep/map/backaction blocks are in units of kappa and never rescaled.
"""

import json
import math
from dataclasses import MISSING, asdict, dataclass, field, fields
from typing import List, Optional

from .lattice import DEFAULT_CUTOFF, DEFAULT_NBANDS, DEFAULT_QGRID
from .params import SystemParams

SCENARIOS = ("bands", "weights", "sweep", "map", "backaction", "granularity")
TOP_LEVEL_KEYS = {"params", "scenario", "output"}
PARAM_FREQUENCIES = ("g0", "deltaCA", "kappa", "omegaZ")
DEFAULT_SWEEP_POINTS = 401


class ConfigError(ValueError):
    pass


@dataclass
class BandsBlock:
    depth: float
    qGrid: int = DEFAULT_QGRID
    nBands: int = DEFAULT_NBANDS
    cutoff: int = DEFAULT_CUTOFF

    def validate(self):
        _require(self.depth >= 0, "bands.depth must be >= 0")
        _require(self.qGrid >= 2, "bands.qGrid must be >= 2")
        _require(self.cutoff >= 8, "bands.cutoff must be >= 8")
        _require(1 <= self.nBands <= 2 * self.cutoff, "bands.nBands must be in [1, 2*cutoff]")


@dataclass
class WeightsBlock:
    depths: List[float]
    nBands: int = DEFAULT_NBANDS
    cutoff: int = DEFAULT_CUTOFF

    def validate(self):
        _require(len(self.depths) > 0, "weights.depths must be nonempty")
        _require(all(d >= 0 for d in self.depths), "weights.depths must be >= 0")
        _require(self.cutoff >= 8, "weights.cutoff must be >= 8")
        _require(3 <= self.nBands < 2 * self.cutoff, "weights.nBands must be in [3, 2*cutoff)")


@dataclass
class SweepBlock:
    deltaMin: float
    deltaMax: float
    nMax: float
    points: int = DEFAULT_SWEEP_POINTS
    direction: str = "both"

    def validate(self):
        _require(self.deltaMin <= self.deltaMax, "sweep: deltaMin must be <= deltaMax")
        _require(self.nMax >= 0, "sweep.nMax must be >= 0")
        _require(self.points >= 1, "sweep.points must be >= 1")
        _require(self.direction in ("up", "down", "both"),
                 "sweep.direction must be up, down or both")


@dataclass
class MapBlock:
    deltaMin: float
    deltaMax: float
    nMaxMin: float
    nMaxMax: float
    deltaPoints: int = 81
    nMaxPoints: int = 41

    def validate(self):
        _require(self.deltaMin <= self.deltaMax, "map: deltaMin must be <= deltaMax")
        _require(0 <= self.nMaxMin <= self.nMaxMax, "map: need 0 <= nMaxMin <= nMaxMax")
        _require(self.deltaPoints >= 1 and self.nMaxPoints >= 1, "map: grid sizes must be >= 1")


@dataclass
class BackactionBlock:
    deltaMin: float
    deltaMax: float
    meanPhotons: float
    points: int = 201
    omegaZ: Optional[float] = None

    def validate(self):
        _require(self.deltaMin <= self.deltaMax, "backaction: deltaMin must be <= deltaMax")
        _require(self.meanPhotons >= 0, "backaction.meanPhotons must be >= 0")
        _require(self.points >= 1, "backaction.points must be >= 1")
        _require(self.omegaZ is None or self.omegaZ > 0, "backaction.omegaZ must be > 0")


@dataclass
class GranularityBlock:
    detunings: List[float]

    def validate(self):
        _require(all(d != 0 for d in self.detunings), "granularity.detunings must be nonzero")


BLOCKS = {
    "bands": BandsBlock,
    "weights": WeightsBlock,
    "sweep": SweepBlock,
    "map": MapBlock,
    "backaction": BackactionBlock,
    "granularity": GranularityBlock,
}

# frequency-valued fields inside scenario blocks
BLOCK_FREQUENCIES = {"backaction": ("omegaZ",), "granularity": ("detunings",)}


@dataclass
class ScenarioConfig:
    params: SystemParams
    scenario: str
    block: object
    output: str = field(default="out/run")

    def to_dict(self):
        return {
            "params": asdict(self.params),
            "scenario": self.scenario,
            self.scenario: asdict(self.block),
            "output": self.output,
        }


def _require(ok, message):
    if not ok:
        raise ConfigError(message)


def _build(cls, raw, where):
    if not isinstance(raw, dict):
        raise ConfigError("%s must be a JSON object" % where)
    names = {f.name for f in fields(cls)}
    for key in raw:
        if key not in names:
            raise ConfigError("unknown field %r in %s" % (key, where))
    required = [f.name for f in fields(cls)
                if f.default is MISSING and f.default_factory is MISSING]
    for name in required:
        if name not in raw:
            raise ConfigError("missing field %r in %s" % (name, where))
    for key, value in raw.items():
        if isinstance(value, bool):
            raise ConfigError("field %r in %s must not be boolean" % (key, where))
    return cls(**raw)


def _scale(value, factor):
    if value is None:
        return None
    if isinstance(value, list):
        return [v * factor for v in value]
    return value * factor


def config_from_dict(raw, hz=False):
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    scenario = raw.get("scenario")
    if scenario not in SCENARIOS:
        raise ConfigError("scenario must be one of %s, got %r" % (", ".join(SCENARIOS), scenario))
    for key in raw:
        if key not in TOP_LEVEL_KEYS and key not in SCENARIOS:
            raise ConfigError("unknown field %r at top level" % key)
        if key in SCENARIOS and key != scenario:
            raise ConfigError("block %r present but scenario is %r" % (key, scenario))
    for key in ("params", scenario):
        if key not in raw:
            raise ConfigError("missing field %r" % key)

    factor = 2 * math.pi if hz else 1.0
    params_raw = dict(raw["params"]) if isinstance(raw["params"], dict) else raw["params"]
    if hz and isinstance(params_raw, dict):
        for name in PARAM_FREQUENCIES:
            if name in params_raw:
                params_raw[name] = _scale(params_raw[name], factor)
    try:
        params = _build(SystemParams, params_raw, "params")
    except (TypeError, ValueError) as exc:
        raise ConfigError("params: %s" % exc) from None

    block_raw = dict(raw[scenario]) if isinstance(raw[scenario], dict) else raw[scenario]
    if hz and isinstance(block_raw, dict):
        for name in BLOCK_FREQUENCIES.get(scenario, ()):
            if name in block_raw:
                block_raw[name] = _scale(block_raw[name], factor)
    try:
        block = _build(BLOCKS[scenario], block_raw, scenario)
        block.validate()
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError("%s: %s" % (scenario, exc)) from None

    output = raw.get("output", "out/run")
    if not isinstance(output, str) or not output:
        raise ConfigError("output must be a nonempty string")
    return ScenarioConfig(params, scenario, block, output)


def load_config(path, hz=False):
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError("cannot read config %s: %s" % (path, exc)) from None
    except json.JSONDecodeError as exc:
        raise ConfigError("malformed JSON in %s: %s" % (path, exc)) from None
    return config_from_dict(raw, hz=hz)
