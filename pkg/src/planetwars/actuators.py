"""Actuators: what an action token means, and which tokens matter.

The engine decodes tokens inside the tick kernel; this module owns the
player-facing side: action-space sizes, the flat index encoding used by
the planning agents, and legal-action enumeration.  An action is "legal"
when it is not guaranteed to have the same effect as a no-op this tick;
no-op itself is always legal.

Two actuators are first-class: the two-tick source-target pairing and the
press/release slingshot.  A one-shot (source, target) pair actuator with
an N^2-sized space is also available for branching-factor studies.
"""

from __future__ import annotations

from enum import IntEnum

from . import _kernel as K
from .model import NOOP, PAIR, PRESS, RELEASE, SELECT, Action
from .params import GameParameters

__all__ = ["ActuatorKind", "action_space", "action_to_index", "index_to_action",
           "legal_actions", "sample_random_action"]


class ActuatorKind(IntEnum):
    SOURCE_TARGET = 0
    SLINGSHOT = 1
    SOURCE_TARGET_PAIR = 2


def action_space(act: int, p: GameParameters | int) -> int:
    """Number of distinct action tokens for this actuator."""
    n = p if isinstance(p, int) else p.num_planets
    if act == ActuatorKind.SOURCE_TARGET:
        return n + 1
    if act == ActuatorKind.SLINGSHOT:
        return n + 2
    if act == ActuatorKind.SOURCE_TARGET_PAIR:
        return n * n + 1
    raise ValueError(f"unknown actuator: {act}")


def index_to_action(idx: int, act: int, n: int) -> Action:
    kind, a, b = K._decode_index.py_func(idx, int(act), n)
    return Action(kind, a, b)


def action_to_index(action: Action, act: int, n: int) -> int:
    if action.kind == NOOP:
        return 0
    if act == ActuatorKind.SOURCE_TARGET and action.kind == SELECT:
        return 1 + action.a
    if act == ActuatorKind.SLINGSHOT:
        if action.kind == PRESS:
            return 1 + action.a
        if action.kind == RELEASE:
            return n + 1
    if act == ActuatorKind.SOURCE_TARGET_PAIR and action.kind == PAIR:
        return 1 + action.a * n + action.b
    raise ValueError(f"action {action} does not belong to actuator {act}")


def _owned_docked(state, player: int) -> list[int]:
    P = state.P
    return [
        i
        for i in range(P.shape[0])
        if P[i, K.C_OWNER] == player and P[i, K.C_TSTATUS] == 0.0
    ]


def legal_actions(state, player: int, act: int | None = None) -> list[Action]:
    """Tokens with a possible effect this tick, no-op first.

    Must stay in sync with the kernel's ``_legal_count``/``_sample_legal``
    (the playout sampler); a test enforces the equivalence.
    """
    if act is None:
        act = state.actuators[player - 1]
    n = state.num_planets
    out = [Action.noop()]
    if act == ActuatorKind.SOURCE_TARGET:
        pending = state.pending_source[player - 1]
        if pending is not None:
            out += [Action.select(j) for j in range(n) if j != pending]
        else:
            out += [Action.select(i) for i in _owned_docked(state, player)]
    elif act == ActuatorKind.SLINGSHOT:
        latch = state.press_latch[player - 1]
        if latch is not None and state.P[latch, K.C_OWNER] == player:
            out.append(Action.release())
            out += [Action.press(j) for j in range(n) if j != latch]
        else:
            out += [Action.press(i) for i in _owned_docked(state, player)]
    elif act == ActuatorKind.SOURCE_TARGET_PAIR:
        for i in _owned_docked(state, player):
            out += [Action.pair(i, j) for j in range(n) if j != i]
    else:
        raise ValueError(f"unknown actuator: {act}")
    return out


def sample_random_action(state, player: int, u: float) -> Action:
    """Uniform draw over legal_actions using one uniform variate in [0, 1)."""
    act = state.acts[player - 1]
    kind, a, b = K._sample_legal(state.P, state.ctl, player, act, u)
    return Action(int(kind), int(a), int(b))
