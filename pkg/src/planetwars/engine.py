"""The forward model: game state, tick transition, copying, scoring.

GameState keeps the live game packed in numpy arrays so that copying is a
couple of array copies and one tick is one numba kernel call.  The object
model (``model.Planet`` etc.) is materialized on demand for serialization,
tests and the server.

States are value-copyable and safe to advance independently in parallel
workers; the gravity field and the arrival broad-phase index are immutable
per map and shared between copies rather than duplicated.
"""

from __future__ import annotations

import hashlib
import json
from enum import IntEnum

import numpy as np

from . import _kernel as K
from .gravity import GravityField, compute_gravity_field
from .mapgen import generate_map
from .model import Action, Planet, Transporter
from .params import GameParameters, params_from_json, params_to_json, params_vector

__all__ = [
    "Outcome",
    "GameState",
    "new_game",
    "new_game_from_planets",
    "copy_state",
    "step_state",
    "next_state",
    "is_terminal",
    "score",
    "total_ships",
    "ensure_gravity",
    "state_to_json",
    "state_from_json",
    "state_hash",
    "DEFAULT_PLANET_WEIGHT",
]

DEFAULT_PLANET_WEIGHT = 10.0

# Actuator codes; names are the wire encoding.
SOURCE_TARGET = 0
SLINGSHOT = 1
SOURCE_TARGET_PAIR = 2

ACTUATOR_NAMES = {SOURCE_TARGET: "sourceTarget", SLINGSHOT: "slingshot",
                  SOURCE_TARGET_PAIR: "sourceTargetPair"}
ACTUATOR_CODES = {v: k for k, v in ACTUATOR_NAMES.items()}


class Outcome(IntEnum):
    P1_WIN = 1
    P2_WIN = 2
    DRAW = 3

    def winner(self) -> int | None:
        return int(self) if self is not Outcome.DRAW else None


class GameState:
    """Packed game state; mutate only via step_state or on private copies."""

    __slots__ = ("tick", "P", "ctl", "acts", "params", "pv", "gravity", "_occ")

    def __init__(self, tick, P, ctl, acts, params, pv, gravity, occ):
        self.tick = tick
        self.P = P
        self.ctl = ctl
        self.acts = acts
        self.params = params
        self.pv = pv
        self.gravity = gravity
        self._occ = occ

    # -- views -------------------------------------------------------------

    @property
    def num_planets(self) -> int:
        return self.P.shape[0]

    @property
    def actuators(self) -> tuple[int, int]:
        return (int(self.acts[0]), int(self.acts[1]))

    @property
    def pending_source(self) -> tuple[int | None, int | None]:
        return tuple(int(v) if v >= 0 else None for v in self.ctl[:2])

    @property
    def press_latch(self) -> tuple[int | None, int | None]:
        return tuple(int(v) if v >= 0 else None for v in self.ctl[2:])

    @property
    def planets(self) -> list[Planet]:
        return [self.planet(i) for i in range(self.P.shape[0])]

    def planet(self, i: int) -> Planet:
        row = self.P[i]
        return Planet(
            id=i,
            x=row[K.C_X],
            y=row[K.C_Y],
            radius=row[K.C_R],
            growth_rate=row[K.C_GROWTH],
            owner=int(row[K.C_OWNER]),
            ships=row[K.C_SHIPS],
            turret_angle=row[K.C_TURRET],
            transporter=Transporter(
                status=int(row[K.C_TSTATUS]),
                x=row[K.C_TX],
                y=row[K.C_TY],
                vx=row[K.C_TVX],
                vy=row[K.C_TVY],
                payload=row[K.C_TPAYLOAD],
                payload_owner=int(row[K.C_TOWNER]),
            ),
        )

    def copy(self) -> "GameState":
        return GameState(self.tick, self.P.copy(), self.ctl.copy(), self.acts,
                         self.params, self.pv, self.gravity, self._occ)


def _pack(planets: list[Planet]) -> np.ndarray:
    P = np.zeros((len(planets), K.NCOLS), dtype=np.float64)
    for i, pl in enumerate(planets):
        t = pl.transporter
        P[i] = (pl.x, pl.y, pl.radius, pl.growth_rate, float(pl.owner), pl.ships,
                pl.turret_angle, float(t.status), t.x, t.y, t.vx, t.vy,
                t.payload, float(t.payload_owner))
        if t.status == 0 and t.payload == 0.0 and t.x == 0.0 and t.y == 0.0:
            P[i, K.C_TX] = pl.x
            P[i, K.C_TY] = pl.y
    return P


def _build_occupancy(P: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
    """Static cell index over planet centers for O(1) arrival queries."""
    max_r = float(P[:, K.C_R].max()) if P.shape[0] else 1.0
    ocell = max(2.0 * max_r, 1.0)
    max_x = float(P[:, K.C_X].max())
    max_y = float(P[:, K.C_Y].max())
    nx = int(max_x // ocell) + 1
    ny = int(max_y // ocell) + 1
    head = np.full((nx, ny), -1, dtype=np.int64)
    nxt = np.full(P.shape[0], -1, dtype=np.int64)
    for i in range(P.shape[0]):
        cx = int(P[i, K.C_X] // ocell)
        cy = int(P[i, K.C_Y] // ocell)
        nxt[i] = head[cx, cy]
        head[cx, cy] = i
    return head, nxt, ocell


def new_game_from_planets(
    planets: list[Planet],
    params: GameParameters,
    actuators: tuple[int, int] = (SOURCE_TARGET, SOURCE_TARGET),
    gravity: GravityField | None = None,
) -> GameState:
    P = _pack(planets)
    if gravity is None:
        gravity = compute_gravity_field(planets, params)
    return GameState(
        tick=0,
        P=P,
        ctl=np.full(4, -1, dtype=np.int64),
        acts=np.array(actuators, dtype=np.int64),
        params=params,
        pv=params_vector(params),
        gravity=gravity,
        occ=_build_occupancy(P),
    )


def new_game(
    params: GameParameters,
    seed: int,
    actuators: tuple[int, int] = (SOURCE_TARGET, SOURCE_TARGET),
) -> GameState:
    return new_game_from_planets(generate_map(params, seed), params, actuators)


def copy_state(s: GameState) -> GameState:
    return s.copy()


def ensure_gravity(s: GameState) -> GravityField:
    """Recompute the shared static fields after deserialization."""
    if s.gravity is None:
        s.gravity = compute_gravity_field(s.planets, s.params)
    if s._occ is None:
        s._occ = _build_occupancy(s.P)
    return s.gravity


def step_state(s: GameState, a1: Action, a2: Action) -> GameState:
    """Advance s by one tick in place (both actions applied); returns s."""
    if s.gravity is None or s._occ is None:
        ensure_gravity(s)
    head, nxt, ocell = s._occ
    s.tick = K._tick(
        s.P, s.ctl, s.acts, s.gravity.grid, head, nxt, ocell, s.pv, s.tick,
        a1.kind, a1.a, a1.b, a2.kind, a2.a, a2.b,
    )
    return s


def next_state(s: GameState, a1: Action, a2: Action) -> GameState:
    """Pure successor: s is left untouched.  Requires s non-terminal."""
    return step_state(s.copy(), a1, a2)


def is_terminal(s: GameState) -> Outcome | None:
    code = K._terminal(s.P, s.tick, s.params.max_ticks)
    return Outcome(code) if code else None


def score(s: GameState, player: int, planet_weight: float = DEFAULT_PLANET_WEIGHT) -> float:
    """Ship differential for `player`; antisymmetric between the players."""
    return float(K._score(s.P, player, planet_weight))


def total_ships(s: GameState, player: int) -> float:
    """Ships on owned planets plus payloads in transit or loading."""
    P = s.P
    owned = P[:, K.C_OWNER] == player
    carried = P[:, K.C_TOWNER] == player
    return float(P[owned, K.C_SHIPS].sum() + P[carried, K.C_TPAYLOAD].sum())


# ---------------------------------------------------------------------------
# serialization: plain JSON, gravity always null (recomputed on demand)

FORMAT_VERSION = 1


def state_to_json(s: GameState) -> dict:
    return {
        "version": FORMAT_VERSION,
        "tick": s.tick,
        "parameters": params_to_json(s.params),
        "actuators": [ACTUATOR_NAMES[a] for a in s.actuators],
        "pendingSource": list(s.pending_source),
        "pressLatch": list(s.press_latch),
        "planets": [p.to_json() for p in s.planets],
        "gravity": None,
    }


def state_from_json(obj: dict) -> GameState:
    if obj.get("version") != FORMAT_VERSION:
        raise ValueError(f"unsupported state format version: {obj.get('version')!r}")
    params = params_from_json(obj["parameters"])
    planets = [Planet.from_json(p) for p in obj["planets"]]
    P = _pack(planets)
    ctl = np.full(4, -1, dtype=np.int64)
    for k, v in enumerate(obj["pendingSource"]):
        ctl[k] = -1 if v is None else int(v)
    for k, v in enumerate(obj["pressLatch"]):
        ctl[2 + k] = -1 if v is None else int(v)
    acts = np.array([ACTUATOR_CODES[a] for a in obj["actuators"]], dtype=np.int64)
    return GameState(
        tick=int(obj["tick"]),
        P=P,
        ctl=ctl,
        acts=acts,
        params=params,
        pv=params_vector(params),
        gravity=None,
        occ=None,
    )


def canonical_json(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def state_hash(s: GameState) -> str:
    return hashlib.sha256(canonical_json(state_to_json(s)).encode()).hexdigest()
