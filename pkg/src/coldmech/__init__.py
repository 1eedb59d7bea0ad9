"""Cavity optomechanics with a collective mode of trapped ultracold atoms."""

__version__ = "0.1.0"

from .params import (  # noqa: E402
    CONSTANTS,
    CollectiveMode,
    PhysicalConstants,
    SystemParams,
    derive_collective_mode,
    derive_per_photon_force,
)
from .statics import DriveCondition  # noqa: E402

__all__ = [
    "CONSTANTS",
    "CollectiveMode",
    "DriveCondition",
    "PhysicalConstants",
    "SystemParams",
    "derive_collective_mode",
    "derive_per_photon_force",
]
