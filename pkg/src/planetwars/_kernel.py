"""Numba kernels for the forward model hot path.

The live game is packed into a single (num_planets, NCOLS) float64 array
plus a 4-slot int64 control array (per-player pending source and slingshot
latch).  One tick is one kernel call; planning agents drive whole playouts
through ``simulate`` to stay out of the interpreter.

Conventions:
  owners: 0 neutral, 1 player one, 2 player two
  transporter status: 0 docked, 1 in transit
  action kinds: 0 noop, 1 select, 2 press, 3 release, 4 pair
  actuators: 0 source-target, 1 slingshot, 2 one-shot pair
  ctl layout: [pending_p1, pending_p2, latch_p1, latch_p2], -1 = none
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

# Planet array columns.
C_X = 0
C_Y = 1
C_R = 2
C_GROWTH = 3
C_OWNER = 4
C_SHIPS = 5
C_TURRET = 6
C_TSTATUS = 7
C_TX = 8
C_TY = 9
C_TVX = 10
C_TVY = 11
C_TPAYLOAD = 12
C_TOWNER = 13
NCOLS = 14

TWO_PI = 2.0 * math.pi

# params_vector indices (must match params.py)
_PV_GRAVITY = 0
_PV_CELL = 1
_PV_WIDTH = 2
_PV_HEIGHT = 3
_PV_SPEED = 4
_PV_TAX = 5
_PV_TRANSFER = 6
_PV_TURRET_RATE = 7
_PV_LOAD_RATE = 8
_PV_OOB_MARGIN = 9


# ---------------------------------------------------------------------------
# xorshift128+ used inside playouts; state is a caller-owned uint64[2] array.

@njit(cache=True, inline="always")
def _rng_u01(st):
    s1 = st[0]
    s0 = st[1]
    st[0] = s0
    s1 ^= s1 << np.uint64(23)
    s1 ^= s1 >> np.uint64(17)
    s1 ^= s0 ^ (s0 >> np.uint64(26))
    st[1] = s1
    return np.float64((s0 + s1) >> np.uint64(11)) * (1.0 / 9007199254740992.0)


def make_rng_state(seed: int) -> np.ndarray:
    """Seed a kernel RNG via splitmix64 (never yields the all-zero state)."""
    mask = (1 << 64) - 1
    x = (seed ^ 0x9E3779B97F4A7C15) & mask
    out = []
    for _ in range(2):
        x = (x + 0x9E3779B97F4A7C15) & mask
        z = x
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
        out.append(z ^ (z >> 31))
    if out[0] == 0 and out[1] == 0:
        out[0] = 1
    return np.array(out, dtype=np.uint64)


# ---------------------------------------------------------------------------
# launch / load helpers

@njit(cache=True, inline="always")
def _launch(P, i, ux, uy, payload, owner, pv):
    P[i, C_TSTATUS] = 1.0
    P[i, C_TX] = P[i, C_X] + P[i, C_R] * ux
    P[i, C_TY] = P[i, C_Y] + P[i, C_R] * uy
    P[i, C_TVX] = pv[_PV_SPEED] * ux
    P[i, C_TVY] = pv[_PV_SPEED] * uy
    P[i, C_TPAYLOAD] = payload
    P[i, C_TOWNER] = owner


@njit(cache=True, inline="always")
def _reset_transporter(P, i):
    P[i, C_TSTATUS] = 0.0
    P[i, C_TX] = P[i, C_X]
    P[i, C_TY] = P[i, C_Y]
    P[i, C_TVX] = 0.0
    P[i, C_TVY] = 0.0
    P[i, C_TPAYLOAD] = 0.0
    P[i, C_TOWNER] = 0.0


@njit(cache=True, inline="always")
def _launch_toward(P, i, j, pv, player):
    """Source-target launch of planet i's transporter toward planet j."""
    dx = P[j, C_X] - P[i, C_X]
    dy = P[j, C_Y] - P[i, C_Y]
    d = math.sqrt(dx * dx + dy * dy)
    if d <= 0.0:
        return
    payload = pv[_PV_TRANSFER] * P[i, C_SHIPS]
    P[i, C_SHIPS] -= payload
    _launch(P, i, dx / d, dy / d, payload, float(player), pv)


@njit(cache=True, inline="always")
def _sling_launch(P, i, player, pv):
    """Release planet i's loading transporter along the current turret angle."""
    theta = P[i, C_TURRET]
    payload = P[i, C_TPAYLOAD]
    _launch(P, i, math.cos(theta), math.sin(theta), payload, float(player), pv)


@njit(cache=True, inline="always")
def _sling_load(P, i, player, pv):
    amount = pv[_PV_LOAD_RATE]
    if amount > P[i, C_SHIPS]:
        amount = P[i, C_SHIPS]
    P[i, C_SHIPS] -= amount
    P[i, C_TPAYLOAD] += amount
    P[i, C_TOWNER] = float(player)


# ---------------------------------------------------------------------------
# action decoding (illegal actions are silently ignored)

@njit(cache=True)
def _decode_one(P, ctl, pv, player, act, kind, a, b):
    n = P.shape[0]
    pidx = player - 1
    if act == 0:  # source-target: two-tick (source, target) pairing
        pending = ctl[pidx]
        if kind == 1 and 0 <= a < n:
            if pending == -1:
                if P[a, C_OWNER] == player and P[a, C_TSTATUS] == 0.0:
                    ctl[pidx] = a
            else:
                ctl[pidx] = -1
                if (
                    a != pending
                    and P[pending, C_OWNER] == player
                    and P[pending, C_TSTATUS] == 0.0
                ):
                    _launch_toward(P, pending, a, pv, player)
        else:
            # noop (or a foreign token) abandons a pending source
            ctl[pidx] = -1
    elif act == 1:  # slingshot: press to load, release to launch
        latch = ctl[2 + pidx]
        if latch != -1 and P[latch, C_OWNER] != player:
            ctl[2 + pidx] = -1  # planet lost since last tick; latch is void
            latch = -1
        if kind == 2 and 0 <= a < n:
            if a == latch:
                _sling_load(P, a, player, pv)
            else:
                if latch != -1:
                    _sling_launch(P, latch, player, pv)
                    ctl[2 + pidx] = -1
                if P[a, C_OWNER] == player and P[a, C_TSTATUS] == 0.0:
                    ctl[2 + pidx] = a
                    _sling_load(P, a, player, pv)
        elif kind == 3:
            if latch != -1:
                _sling_launch(P, latch, player, pv)
                ctl[2 + pidx] = -1
        else:
            if latch != -1:
                _sling_load(P, latch, player, pv)
    else:  # one-shot (source, target) pair
        if kind == 4 and 0 <= a < n and 0 <= b < n and a != b:
            if P[a, C_OWNER] == player and P[a, C_TSTATUS] == 0.0:
                _launch_toward(P, a, b, pv, player)


# ---------------------------------------------------------------------------
# arrival broad phase

@njit(cache=True, inline="always")
def _containing_planet(P, occ_head, occ_next, ocell, qx, qy):
    """Planet whose disk contains (qx, qy), deepest penetration first, -1 if none.

    Cells are sized >= 2 * max radius, so a 3x3 neighbourhood covers every
    planet that can contain the query point.
    """
    nx = occ_head.shape[0]
    ny = occ_head.shape[1]
    cx = int(qx // ocell)
    cy = int(qy // ocell)
    best = -1
    best_depth = 0.0
    for dx in range(-1, 2):
        gx = cx + dx
        if gx < 0 or gx >= nx:
            continue
        for dy in range(-1, 2):
            gy = cy + dy
            if gy < 0 or gy >= ny:
                continue
            j = occ_head[gx, gy]
            while j != -1:
                ddx = qx - P[j, C_X]
                ddy = qy - P[j, C_Y]
                depth = P[j, C_R] - math.sqrt(ddx * ddx + ddy * ddy)
                if depth >= 0.0 and (
                    best == -1
                    or depth > best_depth
                    or (depth == best_depth and j < best)
                ):
                    best = j
                    best_depth = depth
                j = occ_next[j]
    return best


# ---------------------------------------------------------------------------
# the tick

@njit(cache=True)
def _tick(P, ctl, acts, grid, occ_head, occ_next, ocell, pv, tick,
          a1_kind, a1_a, a1_b, a2_kind, a2_a, a2_b):
    """Advance the packed state by one tick in place; returns the new tick.

    Phase order: actions, growth, turret rotation, transit integration,
    arrival / out-of-bounds resolution.
    """
    n = P.shape[0]

    _decode_one(P, ctl, pv, 1, acts[0], a1_kind, a1_a, a1_b)
    _decode_one(P, ctl, pv, 2, acts[1], a2_kind, a2_a, a2_b)

    rate = pv[_PV_TURRET_RATE]
    for i in range(n):
        if P[i, C_OWNER] != 0.0:
            P[i, C_SHIPS] += P[i, C_GROWTH]
        t = P[i, C_TURRET] + rate
        if t >= TWO_PI:
            t -= TWO_PI
        P[i, C_TURRET] = t

    # semi-implicit Euler over the precomputed field, then the transit tax
    cell = pv[_PV_CELL]
    tax = pv[_PV_TAX]
    gnx = grid.shape[0]
    gny = grid.shape[1]
    for i in range(n):
        if P[i, C_TSTATUS] != 1.0:
            continue
        gx = int(P[i, C_TX] // cell)
        gy = int(P[i, C_TY] // cell)
        if 0 <= gx < gnx and 0 <= gy < gny:
            P[i, C_TVX] += grid[gx, gy, 0]
            P[i, C_TVY] += grid[gx, gy, 1]
        P[i, C_TX] += P[i, C_TVX]
        P[i, C_TY] += P[i, C_TVY]
        if tax > 0.0 and P[i, C_TPAYLOAD] > 0.0:
            rem = P[i, C_TPAYLOAD] - tax
            if rem < 0.0:
                # taxed through zero: the remainder belongs to the opponent
                P[i, C_TPAYLOAD] = -rem
                P[i, C_TOWNER] = 3.0 - P[i, C_TOWNER]
            else:
                P[i, C_TPAYLOAD] = rem

    margin = pv[_PV_OOB_MARGIN]
    width = pv[_PV_WIDTH]
    height = pv[_PV_HEIGHT]
    forced_1 = -1
    forced_2 = -1
    for i in range(n):
        if P[i, C_TSTATUS] != 1.0:
            continue
        qx = P[i, C_TX]
        qy = P[i, C_TY]
        hit = _containing_planet(P, occ_head, occ_next, ocell, qx, qy)
        if hit >= 0:
            towner = P[i, C_TOWNER]
            payload = P[i, C_TPAYLOAD]
            if P[hit, C_OWNER] == towner:
                P[hit, C_SHIPS] += payload
            else:
                rem = P[hit, C_SHIPS] - payload
                if rem < 0.0:
                    P[hit, C_OWNER] = towner
                    P[hit, C_SHIPS] = -rem
                    # a loading transporter on a captured planet escapes with
                    # whatever it holds
                    for pl in range(1, 3):
                        if ctl[1 + pl] == hit and float(pl) != towner:
                            if pl == 1:
                                forced_1 = hit
                            else:
                                forced_2 = hit
                            ctl[1 + pl] = -1
                else:
                    P[hit, C_SHIPS] = rem
            _reset_transporter(P, i)
        elif (
            qx < -margin or qx > width + margin or qy < -margin or qy > height + margin
        ):
            _reset_transporter(P, i)  # destroyed; its ships are lost

    # deferred so a forced launch is not re-docked inside its own planet
    # during the same arrival sweep
    if forced_1 >= 0:
        _sling_launch(P, forced_1, 1, pv)
    if forced_2 >= 0:
        _sling_launch(P, forced_2, 2, pv)

    return tick + 1


# ---------------------------------------------------------------------------
# terminal test and score

@njit(cache=True)
def _terminal(P, tick, max_ticks):
    """0 = game on, 1 = p1 win, 2 = p2 win, 3 = draw."""
    n = P.shape[0]
    planets_1 = 0
    planets_2 = 0
    total_1 = 0.0
    total_2 = 0.0
    for i in range(n):
        o = P[i, C_OWNER]
        if o == 1.0:
            planets_1 += 1
            total_1 += P[i, C_SHIPS]
        elif o == 2.0:
            planets_2 += 1
            total_2 += P[i, C_SHIPS]
        pay = P[i, C_TPAYLOAD]
        if pay > 0.0:
            if P[i, C_TOWNER] == 1.0:
                total_1 += pay
            elif P[i, C_TOWNER] == 2.0:
                total_2 += pay
    alive_1 = planets_1 > 0 or total_1 > 0.0
    alive_2 = planets_2 > 0 or total_2 > 0.0
    if not alive_1 and not alive_2:
        return 3
    if not alive_2:
        return 1
    if not alive_1:
        return 2
    if tick >= max_ticks:
        if total_1 > total_2:
            return 1
        if total_2 > total_1:
            return 2
        return 3
    return 0


@njit(cache=True)
def _score(P, player, planet_weight):
    """Ship differential (planets + transit) plus a per-planet bonus."""
    n = P.shape[0]
    mine = 0.0
    theirs = 0.0
    my_planets = 0
    their_planets = 0
    fplayer = float(player)
    for i in range(n):
        o = P[i, C_OWNER]
        if o == fplayer:
            mine += P[i, C_SHIPS]
            my_planets += 1
        elif o != 0.0:
            theirs += P[i, C_SHIPS]
            their_planets += 1
        pay = P[i, C_TPAYLOAD]
        if pay > 0.0:
            if P[i, C_TOWNER] == fplayer:
                mine += pay
            elif P[i, C_TOWNER] != 0.0:
                theirs += pay
    return (mine - theirs) + planet_weight * (my_planets - their_planets)


# ---------------------------------------------------------------------------
# legal-action counting and uniform sampling (used by playouts)

@njit(cache=True)
def _legal_count(P, ctl, player, act):
    n = P.shape[0]
    pidx = player - 1
    if act == 0:
        if ctl[pidx] != -1:
            return n  # noop + every planet except the pending source
        count = 1
        for i in range(n):
            if P[i, C_OWNER] == player and P[i, C_TSTATUS] == 0.0:
                count += 1
        return count
    if act == 1:
        latch = ctl[2 + pidx]
        if latch != -1 and P[latch, C_OWNER] == player:
            return n + 1  # noop + release + press on any other planet
        count = 1
        for i in range(n):
            if P[i, C_OWNER] == player and P[i, C_TSTATUS] == 0.0:
                count += 1
        return count
    # one-shot pairs: noop + (n-1) targets per launchable source
    count = 1
    for i in range(n):
        if P[i, C_OWNER] == player and P[i, C_TSTATUS] == 0.0:
            count += n - 1
    return count


@njit(cache=True)
def _sample_legal(P, ctl, player, act, u):
    """Uniform draw over the legal set; returns (kind, a, b)."""
    n = P.shape[0]
    pidx = player - 1
    count = _legal_count(P, ctl, player, act)
    k = int(u * count)
    if k >= count:
        k = count - 1
    if k == 0:
        return 0, -1, -1  # noop is always legal and always first
    k -= 1
    if act == 0:
        pending = ctl[pidx]
        if pending != -1:
            # k-th planet that is not the pending source
            for j in range(n):
                if j == pending:
                    continue
                if k == 0:
                    return 1, j, -1
                k -= 1
            return 0, -1, -1
        for i in range(n):
            if P[i, C_OWNER] == player and P[i, C_TSTATUS] == 0.0:
                if k == 0:
                    return 1, i, -1
                k -= 1
        return 0, -1, -1
    if act == 1:
        latch = ctl[2 + pidx]
        if latch != -1 and P[latch, C_OWNER] == player:
            if k == 0:
                return 3, -1, -1  # release
            k -= 1
            for j in range(n):
                if j == latch:
                    continue
                if k == 0:
                    return 2, j, -1
                k -= 1
            return 0, -1, -1
        for i in range(n):
            if P[i, C_OWNER] == player and P[i, C_TSTATUS] == 0.0:
                if k == 0:
                    return 2, i, -1
                k -= 1
        return 0, -1, -1
    for i in range(n):
        if P[i, C_OWNER] == player and P[i, C_TSTATUS] == 0.0:
            if k < n - 1:
                j = k if k < i else k + 1
                return 4, i, j
            k -= n - 1
    return 0, -1, -1


@njit(cache=True)
def _decode_index(idx, act, n):
    """Map a flat action index (agent gene) to (kind, a, b)."""
    if idx <= 0:
        return 0, -1, -1
    if act == 0:
        if idx <= n:
            return 1, idx - 1, -1
        return 0, -1, -1
    if act == 1:
        if idx <= n:
            return 2, idx - 1, -1
        if idx == n + 1:
            return 3, -1, -1
        return 0, -1, -1
    if idx <= n * n:
        return 4, (idx - 1) // n, (idx - 1) % n
    return 0, -1, -1


@njit(cache=True)
def _random_actions(P, ctl, acts, rng, out):
    """Sample both players' random legal actions into out[0:6]."""
    k1, a1, b1 = _sample_legal(P, ctl, 1, acts[0], _rng_u01(rng))
    k2, a2, b2 = _sample_legal(P, ctl, 2, acts[1], _rng_u01(rng))
    out[0] = k1
    out[1] = a1
    out[2] = b1
    out[3] = k2
    out[4] = a2
    out[5] = b2


# ---------------------------------------------------------------------------
# whole playouts for planning agents

@njit(cache=True)
def _simulate(P, ctl, acts, grid, occ_head, occ_next, ocell, pv, tick,
              max_ticks, plan1, plan2, horizon, rng):
    """Advance up to `horizon` ticks in place, mutating P/ctl.

    plan entries are flat action indices; -1 means "sample a random legal
    action".  Returns (ticks_done, outcome) with outcome 0 if the horizon
    was reached without a terminal state.
    """
    ticks_done = 0
    outcome = 0
    for step in range(horizon):
        outcome = _terminal(P, tick, max_ticks)
        if outcome != 0:
            return ticks_done, outcome
        e1 = plan1[step] if step < plan1.shape[0] else -1
        e2 = plan2[step] if step < plan2.shape[0] else -1
        if e1 < 0:
            k1, a1, b1 = _sample_legal(P, ctl, 1, acts[0], _rng_u01(rng))
        else:
            k1, a1, b1 = _decode_index(e1, acts[0], P.shape[0])
        if e2 < 0:
            k2, a2, b2 = _sample_legal(P, ctl, 2, acts[1], _rng_u01(rng))
        else:
            k2, a2, b2 = _decode_index(e2, acts[1], P.shape[0])
        tick = _tick(P, ctl, acts, grid, occ_head, occ_next, ocell, pv, tick,
                     k1, a1, b1, k2, a2, b2)
        ticks_done += 1
    outcome = _terminal(P, tick, max_ticks)
    return ticks_done, outcome
