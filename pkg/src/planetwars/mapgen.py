"""Random map generation.

Planet 0 and planet 1 are the two home planets, mirrored about the map
center with identical radius and growth so the opening is fair.  All other
planets are neutral.  Placement is rejection sampling under the radial
separation constraint; generation is deterministic in the seed.
"""

from __future__ import annotations

import math

import numpy as np

from .model import Owner, Planet
from .params import GameParameters

__all__ = ["MapInfeasibleError", "generate_map", "growth_for_radius", "HOME_GARRISON"]

HOME_GARRISON = 100.0

# Attempts per planet before giving up on a too-dense map.
MAX_PLACEMENT_ATTEMPTS = 1000


class MapInfeasibleError(Exception):
    """Raised when rejection sampling cannot place all planets."""


def growth_for_radius(radius: float, p: GameParameters) -> float:
    """Growth rate as an affine function of radius.

    Radius is sampled uniformly, so growth is uniform in
    [growth_rate_min, growth_rate_max] and monotone in planet size.
    """
    span = p.max_radius - p.min_radius
    t = 0.5 if span == 0 else (radius - p.min_radius) / span
    return p.growth_rate_min + t * (p.growth_rate_max - p.growth_rate_min)


def _fits(x: float, y: float, r: float, placed: list[Planet], p: GameParameters) -> bool:
    if x < r or y < r or x > p.map_width - r or y > p.map_height - r:
        return False
    for q in placed:
        if math.hypot(x - q.x, y - q.y) < p.radial_separation * max(r, q.radius):
            return False
    return True


def generate_map(p: GameParameters, seed: int) -> list[Planet]:
    rng = np.random.Generator(np.random.PCG64(seed))
    cx, cy = p.map_width / 2.0, p.map_height / 2.0
    planets: list[Planet] = []

    # Home pair first: one sampled position, the other its point mirror.
    r_home = float(rng.uniform(p.min_radius, p.max_radius))
    g_home = growth_for_radius(r_home, p)
    for _ in range(MAX_PLACEMENT_ATTEMPTS):
        x = float(rng.uniform(r_home, p.map_width - r_home))
        y = float(rng.uniform(r_home, p.map_height - r_home))
        mx, my = 2 * cx - x, 2 * cy - y
        if math.hypot(x - mx, y - my) < p.radial_separation * r_home:
            continue
        planets = [
            Planet(0, x, y, r_home, g_home, Owner.P1, HOME_GARRISON),
            Planet(1, mx, my, r_home, g_home, Owner.P2, HOME_GARRISON),
        ]
        break
    else:
        raise MapInfeasibleError("could not place mirrored home planets")

    for idx in range(2, p.num_planets):
        r = float(rng.uniform(p.min_radius, p.max_radius))
        garrison = float(rng.uniform(0.0, p.neutral_garrison_max))
        for _ in range(MAX_PLACEMENT_ATTEMPTS):
            x = float(rng.uniform(r, p.map_width - r))
            y = float(rng.uniform(r, p.map_height - r))
            if _fits(x, y, r, planets, p):
                planets.append(
                    Planet(idx, x, y, r, growth_for_radius(r, p), Owner.NEUTRAL, garrison)
                )
                break
        else:
            raise MapInfeasibleError(
                f"map infeasible: no room for planet {idx} after "
                f"{MAX_PLACEMENT_ATTEMPTS} attempts"
            )

    # Turrets start aimed at the map center.
    for planet in planets:
        planet.turret_angle = math.atan2(cy - planet.y, cx - planet.x) % (2 * math.pi)
    return planets
