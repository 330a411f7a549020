"""Object model: owners, planets, transporters, and per-tick action tokens.

These are the friendly view types used by map generation, serialization,
tests and the server.  The engine keeps the live game in packed numpy
arrays (see ``engine.py``); conversion helpers live there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import IntEnum
from typing import NamedTuple

__all__ = ["Owner", "Transporter", "Planet", "Action"]


class Owner(IntEnum):
    NEUTRAL = 0
    P1 = 1
    P2 = 2

    def opponent(self) -> "Owner":
        if self is Owner.P1:
            return Owner.P2
        if self is Owner.P2:
            return Owner.P1
        raise ValueError("neutral has no opponent")


# Transporter status codes (mirrored in the packed array representation).
DOCKED = 0
IN_TRANSIT = 1

_STATUS_NAMES = {DOCKED: "docked", IN_TRANSIT: "inTransit"}
_STATUS_CODES = {v: k for k, v in _STATUS_NAMES.items()}


@dataclass
class Transporter:
    status: int = DOCKED
    x: float = 0.0
    y: float = 0.0
    vx: float = 0.0
    vy: float = 0.0
    payload: float = 0.0
    payload_owner: int = 0  # Owner value; 0 while docked and empty

    def to_json(self) -> dict:
        return {
            "status": _STATUS_NAMES[self.status],
            "x": self.x,
            "y": self.y,
            "vx": self.vx,
            "vy": self.vy,
            "payload": self.payload,
            "payloadOwner": self.payload_owner,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Transporter":
        return cls(
            status=_STATUS_CODES[obj["status"]],
            x=float(obj["x"]),
            y=float(obj["y"]),
            vx=float(obj["vx"]),
            vy=float(obj["vy"]),
            payload=float(obj["payload"]),
            payload_owner=int(obj["payloadOwner"]),
        )


@dataclass
class Planet:
    id: int
    x: float
    y: float
    radius: float
    growth_rate: float
    owner: int = Owner.NEUTRAL
    ships: float = 0.0
    turret_angle: float = 0.0
    transporter: Transporter = field(default_factory=Transporter)

    def distance_to(self, other: "Planet") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "x": self.x,
            "y": self.y,
            "radius": self.radius,
            "growthRate": self.growth_rate,
            "owner": int(self.owner),
            "ships": self.ships,
            "turretAngle": self.turret_angle,
            "transporter": self.transporter.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Planet":
        return cls(
            id=int(obj["id"]),
            x=float(obj["x"]),
            y=float(obj["y"]),
            radius=float(obj["radius"]),
            growth_rate=float(obj["growthRate"]),
            owner=int(obj["owner"]),
            ships=float(obj["ships"]),
            turret_angle=float(obj["turretAngle"]),
            transporter=Transporter.from_json(obj["transporter"]),
        )


# Action kind codes, shared with the kernels.
NOOP = 0
SELECT = 1
PRESS = 2
RELEASE = 3
PAIR = 4

_KIND_NAMES = {NOOP: "noop", SELECT: "select", PRESS: "press", RELEASE: "release", PAIR: "pair"}
_KIND_CODES = {v: k for k, v in _KIND_NAMES.items()}


class Action(NamedTuple):
    """One player's input token for one tick.

    Meaning depends on the player's actuator: ``select`` belongs to the
    source-target scheme, ``press``/``release`` to the slingshot, ``pair``
    to the one-shot source-target variant.  ``a`` and ``b`` carry planet
    indices where applicable.  NamedTuple keeps construction cheap on the
    benchmark path.
    """

    kind: int = NOOP
    a: int = -1
    b: int = -1

    @staticmethod
    def noop() -> "Action":
        return _NOOP_ACTION

    @staticmethod
    def select(planet: int) -> "Action":
        return Action(SELECT, planet)

    @staticmethod
    def press(planet: int) -> "Action":
        return Action(PRESS, planet)

    @staticmethod
    def release() -> "Action":
        return Action(RELEASE)

    @staticmethod
    def pair(source: int, target: int) -> "Action":
        return Action(PAIR, source, target)

    def to_json(self) -> dict:
        if self.kind == NOOP or self.kind == RELEASE:
            return {"kind": _KIND_NAMES[self.kind]}
        if self.kind == PAIR:
            return {"kind": "pair", "source": self.a, "target": self.b}
        return {"kind": _KIND_NAMES[self.kind], "planet": self.a}

    @classmethod
    def from_json(cls, obj: dict) -> "Action":
        kind = _KIND_CODES[obj["kind"]]
        if kind == PAIR:
            return cls(kind, int(obj["source"]), int(obj["target"]))
        if kind in (SELECT, PRESS):
            return cls(kind, int(obj["planet"]))
        return cls(kind)


_NOOP_ACTION = Action()
