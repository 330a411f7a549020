"""Precomputed gravity field.

The field is a grid of force vectors covering the map, summed over all
planets with mass = radius^2 (2D space) and magnitude G * mass / d^2
toward each planet.  The distance is clamped below at the planet radius so
the force stays bounded inside planets.  Positions and radii are fixed
after map generation, so the field is computed once per game and shared by
all copies of the state; it is excluded from serialization and recomputed
on demand.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import Planet
from .params import GameParameters

__all__ = ["GravityField", "compute_gravity_field", "gravity_at", "field_computation_count"]

# Instrumentation: total full-field computations in this process.  Normal
# game play must hit this exactly once per game.
_FIELD_COMPUTATIONS = 0


def field_computation_count() -> int:
    return _FIELD_COMPUTATIONS


@dataclass
class GravityField:
    cell_size: float
    grid: np.ndarray  # shape (nx, ny, 2), force vector at each cell center

    def downsample(self, max_cells: int = 48) -> dict:
        """Coarse copy of the grid for client-side visualization."""
        nx, ny = self.grid.shape[:2]
        stride = max(1, int(np.ceil(max(nx, ny) / max_cells)))
        sub = self.grid[::stride, ::stride]
        return {
            "cellSize": self.cell_size * stride,
            "nx": sub.shape[0],
            "ny": sub.shape[1],
            "fx": np.round(sub[:, :, 0], 6).tolist(),
            "fy": np.round(sub[:, :, 1], 6).tolist(),
        }


def compute_gravity_field(planets: list[Planet], p: GameParameters) -> GravityField:
    if not planets:
        raise ValueError("need at least one planet")
    global _FIELD_COMPUTATIONS
    _FIELD_COMPUTATIONS += 1

    cell = p.gravity_grid_cell
    nx = int(np.ceil(p.map_width / cell))
    ny = int(np.ceil(p.map_height / cell))
    xs = (np.arange(nx, dtype=np.float64) + 0.5) * cell
    ys = (np.arange(ny, dtype=np.float64) + 0.5) * cell
    gx = xs[:, None]
    gy = ys[None, :]

    grid = np.zeros((nx, ny, 2), dtype=np.float64)
    g = p.gravitational_constant
    if g == 0.0:
        return GravityField(cell, grid)

    for planet in planets:
        dx = planet.x - gx
        dy = planet.y - gy
        dist = np.hypot(dx, dy)
        soft = np.maximum(dist, planet.radius)
        # magnitude g*m/soft^2 along the true direction; zero exactly at the center
        with np.errstate(divide="ignore", invalid="ignore"):
            scale = g * planet.radius**2 / (soft * soft * dist)
            scale[dist == 0.0] = 0.0
        grid[:, :, 0] += scale * dx
        grid[:, :, 1] += scale * dy
    return GravityField(cell, grid)


def gravity_at(field: GravityField, x: float, y: float) -> tuple[float, float]:
    """Nearest-cell lookup; positions off the grid feel no force."""
    ix = int(x // field.cell_size)
    iy = int(y // field.cell_size)
    if ix < 0 or iy < 0 or ix >= field.grid.shape[0] or iy >= field.grid.shape[1]:
        return (0.0, 0.0)
    return (float(field.grid[ix, iy, 0]), float(field.grid[ix, iy, 1]))
