"""Game parameters: the single bundle of values that defines a game variant.

Every tunable of the simulation lives here.  A game instance references
exactly one GameParameters value; because the dataclass is frozen, copies
of a game can safely share it, and a modified variant is made with
``dataclasses.replace``.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GameParameters",
    "default_parameters",
    "validate_parameters",
    "params_to_json",
    "params_from_json",
]


@dataclass(frozen=True)
class GameParameters:
    num_planets: int = 20
    map_width: float = 640.0            # pixels
    map_height: float = 480.0           # pixels
    gravitational_constant: float = 0.25
    growth_rate_min: float = 0.02       # ships/tick
    growth_rate_max: float = 0.10       # ships/tick
    radial_separation: float = 2.0      # multiples of the larger radius
    min_radius: float = 8.0             # pixels
    max_radius: float = 24.0            # pixels
    ship_launch_speed: float = 3.0      # pixels/tick
    transport_tax: float = 0.05         # ships/tick while in transit
    transfer_ratio: float = 0.5         # fraction of ships loaded at launch
    turret_rotation_rate: float = 0.05  # radians/tick
    slingshot_load_rate: float = 1.0    # ships/tick while pressed
    neutral_garrison_max: float = 30.0  # ships
    max_ticks: int = 2000
    gravity_grid_cell: float = 1.0      # pixels per gravity-grid cell

    def replace(self, **changes) -> "GameParameters":
        return dataclasses.replace(self, **changes)


def default_parameters() -> GameParameters:
    return GameParameters()


def validate_parameters(p: GameParameters) -> list[str]:
    """Return the list of violated invariants, empty when p is valid.

    Each entry names the offending field so callers (CLI, HTTP API) can
    report errors per field.
    """
    errors = []
    if p.num_planets < 2:
        errors.append("numPlanets: must be >= 2 (two players need distinct home planets)")
    if not (0 < p.min_radius <= p.max_radius):
        errors.append("minRadius/maxRadius: need 0 < minRadius <= maxRadius")
    if p.growth_rate_min > p.growth_rate_max:
        errors.append("growthRateMin: must be <= growthRateMax")
    if not (0 < p.transfer_ratio <= 1.0):
        errors.append("transferRatio: must be in (0, 1]")
    if p.map_width <= 4 * p.max_radius:
        errors.append("mapWidth: must exceed 4 * maxRadius")
    if p.map_height <= 4 * p.max_radius:
        errors.append("mapHeight: must exceed 4 * maxRadius")
    for field in (
        "gravitational_constant",
        "growth_rate_min",
        "radial_separation",
        "ship_launch_speed",
        "transport_tax",
        "turret_rotation_rate",
        "slingshot_load_rate",
        "neutral_garrison_max",
    ):
        if getattr(p, field) < 0:
            errors.append(f"{_camel(field)}: must be >= 0")
    if p.max_ticks < 1:
        errors.append("maxTicks: must be >= 1")
    if p.gravity_grid_cell <= 0:
        errors.append("gravityGridCell: must be > 0")
    return errors


def _camel(name: str) -> str:
    head, *rest = name.split("_")
    return head + "".join(w.capitalize() for w in rest)


# Wire format uses camelCase keys; attribute order defines the canonical order.
_FIELDS = [f.name for f in dataclasses.fields(GameParameters)]
_KEY_OF = {name: _camel(name) for name in _FIELDS}
_NAME_OF = {v: k for k, v in _KEY_OF.items()}


def params_to_json(p: GameParameters) -> dict:
    return {_KEY_OF[name]: getattr(p, name) for name in _FIELDS}


def params_from_json(obj: dict) -> GameParameters:
    unknown = set(obj) - set(_NAME_OF)
    if unknown:
        raise ValueError(f"unknown parameter fields: {sorted(unknown)}")
    kwargs = {}
    for key, value in obj.items():
        name = _NAME_OF[key]
        kwargs[name] = int(value) if name in ("num_planets", "max_ticks") else float(value)
    return GameParameters(**kwargs)


# Index layout of the packed parameter vector handed to the numba kernels.
PV_GRAVITY = 0
PV_CELL = 1
PV_WIDTH = 2
PV_HEIGHT = 3
PV_SPEED = 4
PV_TAX = 5
PV_TRANSFER = 6
PV_TURRET_RATE = 7
PV_LOAD_RATE = 8
PV_OOB_MARGIN = 9
PV_SIZE = 10


def params_vector(p: GameParameters) -> np.ndarray:
    v = np.empty(PV_SIZE, dtype=np.float64)
    v[PV_GRAVITY] = p.gravitational_constant
    v[PV_CELL] = p.gravity_grid_cell
    v[PV_WIDTH] = p.map_width
    v[PV_HEIGHT] = p.map_height
    v[PV_SPEED] = p.ship_launch_speed
    v[PV_TAX] = p.transport_tax
    v[PV_TRANSFER] = p.transfer_ratio
    v[PV_TURRET_RATE] = p.turret_rotation_rate
    v[PV_LOAD_RATE] = p.slingshot_load_rate
    v[PV_OOB_MARGIN] = 2.0 * p.max_radius
    return v
