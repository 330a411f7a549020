import pytest

from planetwars import (
    GameParameters,
    Owner,
    Planet,
    default_parameters,
    new_game,
    new_game_from_planets,
)
from planetwars.engine import SOURCE_TARGET


@pytest.fixture
def defaults() -> GameParameters:
    return default_parameters()


@pytest.fixture
def game(defaults):
    return new_game(defaults, seed=7)


def make_four_planet_game(params=None, actuators=(SOURCE_TARGET, SOURCE_TARGET),
                          g1=12.0, g2=27.0):
    """Small hand-built map: two mirrored homes, two mirrored neutrals.

    Fully point-symmetric about the map center, so play between identical
    deterministic agents stays mirrored.  Distinct neutral garrisons avoid
    argmin ties that would break the mirror.
    """
    p = (params or default_parameters()).replace(num_planets=4)
    cx, cy = p.map_width / 2, p.map_height / 2
    planets = [
        Planet(0, cx - 200, cy, 20.0, 0.05, Owner.P1, 100.0),
        Planet(1, cx + 200, cy, 20.0, 0.05, Owner.P2, 100.0),
        Planet(2, cx - 60, cy - 100, 14.0, 0.04, Owner.NEUTRAL, g1),
        Planet(3, cx + 60, cy + 100, 14.0, 0.04, Owner.NEUTRAL, g2),
    ]
    import math
    for pl in planets:
        pl.turret_angle = math.atan2(cy - pl.y, cx - pl.x) % (2 * math.pi)
    return new_game_from_planets(planets, p, actuators)


