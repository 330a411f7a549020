"""Independent reference implementation of the tick, used as a test oracle.

Deliberately naive and object-free: it advances the JSON form of a state
(dicts and lists, as produced by ``state_to_json``) one tick at a time with
straight-line Python.  It shares nothing with the production kernel except
the precomputed gravity grid, whose values are themselves checked against
direct per-planet summation elsewhere.  Arithmetic is arranged so results
should match the kernel bit-for-bit.
"""

from __future__ import annotations

import math

TWO_PI = 2.0 * math.pi

P1 = 1
P2 = 2


def _params(sj):
    return sj["parameters"]


def _decode(sj, player, action):
    """Apply one player's token; illegal actions are ignored."""
    p = _params(sj)
    planets = sj["planets"]
    n = len(planets)
    act = sj["actuators"][player - 1]
    kind = action.get("kind", "noop")

    if act == "sourceTarget":
        pending = sj["pendingSource"][player - 1]
        a = action.get("planet", -1)
        if kind == "select" and 0 <= a < n:
            if pending is None:
                src = planets[a]
                if src["owner"] == player and src["transporter"]["status"] == "docked":
                    sj["pendingSource"][player - 1] = a
            else:
                sj["pendingSource"][player - 1] = None
                src = planets[pending]
                if (
                    a != pending
                    and src["owner"] == player
                    and src["transporter"]["status"] == "docked"
                ):
                    _launch_toward(src, planets[a], p, player)
        else:
            sj["pendingSource"][player - 1] = None

    elif act == "slingshot":
        latch = sj["pressLatch"][player - 1]
        if latch is not None and planets[latch]["owner"] != player:
            sj["pressLatch"][player - 1] = None
            latch = None
        a = action.get("planet", -1)
        if kind == "press" and 0 <= a < n:
            if a == latch:
                _load(planets[a], p, player)
            else:
                if latch is not None:
                    _sling_launch(planets[latch], p, player)
                    sj["pressLatch"][player - 1] = None
                tgt = planets[a]
                if tgt["owner"] == player and tgt["transporter"]["status"] == "docked":
                    sj["pressLatch"][player - 1] = a
                    _load(tgt, p, player)
        elif kind == "release":
            if latch is not None:
                _sling_launch(planets[latch], p, player)
                sj["pressLatch"][player - 1] = None
        else:
            if latch is not None:
                _load(planets[latch], p, player)

    elif act == "sourceTargetPair":
        a = action.get("source", -1)
        b = action.get("target", -1)
        if kind == "pair" and 0 <= a < n and 0 <= b < n and a != b:
            src = planets[a]
            if src["owner"] == player and src["transporter"]["status"] == "docked":
                _launch_toward(src, planets[b], p, player)


def _launch(planet, ux, uy, payload, owner, p):
    t = planet["transporter"]
    t["status"] = "inTransit"
    t["x"] = planet["x"] + planet["radius"] * ux
    t["y"] = planet["y"] + planet["radius"] * uy
    t["vx"] = p["shipLaunchSpeed"] * ux
    t["vy"] = p["shipLaunchSpeed"] * uy
    t["payload"] = payload
    t["payloadOwner"] = owner


def _launch_toward(src, dst, p, player):
    dx = dst["x"] - src["x"]
    dy = dst["y"] - src["y"]
    d = math.sqrt(dx * dx + dy * dy)
    if d <= 0.0:
        return
    payload = p["transferRatio"] * src["ships"]
    src["ships"] -= payload
    _launch(src, dx / d, dy / d, payload, player, p)


def _sling_launch(planet, p, player):
    theta = planet["turretAngle"]
    _launch(planet, math.cos(theta), math.sin(theta),
            planet["transporter"]["payload"], player, p)


def _load(planet, p, player):
    amount = min(p["slingshotLoadRate"], planet["ships"])
    planet["ships"] -= amount
    t = planet["transporter"]
    t["payload"] += amount
    t["payloadOwner"] = player


def _reset(planet):
    t = planet["transporter"]
    t["status"] = "docked"
    t["x"] = planet["x"]
    t["y"] = planet["y"]
    t["vx"] = 0.0
    t["vy"] = 0.0
    t["payload"] = 0.0
    t["payloadOwner"] = 0


def grid_force(grid, cell_size, x, y):
    ix = int(x // cell_size)
    iy = int(y // cell_size)
    if ix < 0 or iy < 0 or ix >= grid.shape[0] or iy >= grid.shape[1]:
        return 0.0, 0.0
    return float(grid[ix, iy, 0]), float(grid[ix, iy, 1])


def shadow_step(sj, a1, a2, grid):
    """One tick over the JSON state form; mutates and returns sj.

    Also returns a bookkeeping dict decomposing the tick's ship-total
    change into growth, taxes, out-of-map losses and invasion
    annihilation, computed independently of any engine counters.
    """
    p = _params(sj)
    planets = sj["planets"]

    _decode(sj, P1, a1)
    _decode(sj, P2, a2)

    growth_added = 0.0
    for pl in planets:
        if pl["owner"] != 0:
            pl["ships"] += pl["growthRate"]
            growth_added += pl["growthRate"]
        t = pl["turretAngle"] + p["turretRotationRate"]
        if t >= TWO_PI:
            t -= TWO_PI
        pl["turretAngle"] = t

    tax = p["transportTax"]
    tax_removed = 0.0
    for pl in planets:
        t = pl["transporter"]
        if t["status"] != "inTransit":
            continue
        fx, fy = grid_force(grid, p["gravityGridCell"], t["x"], t["y"])
        t["vx"] += fx
        t["vy"] += fy
        t["x"] += t["vx"]
        t["y"] += t["vy"]
        if tax > 0.0 and t["payload"] > 0.0:
            before = t["payload"]
            rem = before - tax
            if rem < 0.0:
                t["payload"] = -rem
                t["payloadOwner"] = 3 - t["payloadOwner"]
            else:
                t["payload"] = rem
            tax_removed += before - t["payload"]

    margin = 2.0 * p["maxRadius"]
    width = p["mapWidth"]
    height = p["mapHeight"]
    oob_lost = 0.0
    annihilated = 0.0
    forced = []
    for pl in planets:
        t = pl["transporter"]
        if t["status"] != "inTransit":
            continue
        qx, qy = t["x"], t["y"]
        hit = None
        hit_depth = 0.0
        for j, q in enumerate(planets):
            ddx = qx - q["x"]
            ddy = qy - q["y"]
            depth = q["radius"] - math.sqrt(ddx * ddx + ddy * ddy)
            if depth >= 0.0 and (hit is None or depth > hit_depth):
                hit = j
                hit_depth = depth
        if hit is not None:
            target = planets[hit]
            payload = t["payload"]
            if target["owner"] == t["payloadOwner"]:
                target["ships"] += payload
            else:
                rem = target["ships"] - payload
                if rem < 0.0:
                    annihilated += 2.0 * target["ships"]
                    target["owner"] = t["payloadOwner"]
                    target["ships"] = -rem
                    for player in (P1, P2):
                        if sj["pressLatch"][player - 1] == hit and player != target["owner"]:
                            forced.append((hit, player))
                            sj["pressLatch"][player - 1] = None
                else:
                    annihilated += 2.0 * payload
                    target["ships"] = rem
            _reset(pl)
        elif qx < -margin or qx > width + margin or qy < -margin or qy > height + margin:
            oob_lost += t["payload"]
            _reset(pl)

    for hit, player in forced:
        _sling_launch(planets[hit], p, player)

    sj["tick"] += 1
    return sj, {
        "growth": growth_added,
        "tax": tax_removed,
        "oob": oob_lost,
        "annihilated": annihilated,
    }


def shadow_total_ships(sj) -> float:
    """Every ship in the game: garrisons (neutral included) plus payloads."""
    total = 0.0
    for pl in sj["planets"]:
        total += pl["ships"]
        total += pl["transporter"]["payload"]
    return total


def shadow_terminal(sj):
    """None while the game is on, else 1 / 2 / 3 (draw)."""
    planets_owned = {P1: 0, P2: 0}
    totals = {P1: 0.0, P2: 0.0}
    for pl in sj["planets"]:
        if pl["owner"] in planets_owned:
            planets_owned[pl["owner"]] += 1
            totals[pl["owner"]] += pl["ships"]
        t = pl["transporter"]
        if t["payload"] > 0.0 and t["payloadOwner"] in totals:
            totals[t["payloadOwner"]] += t["payload"]
    alive = {pl: planets_owned[pl] > 0 or totals[pl] > 0.0 for pl in (P1, P2)}
    if not alive[P1] and not alive[P2]:
        return 3
    if not alive[P2]:
        return 1
    if not alive[P1]:
        return 2
    if sj["tick"] >= sj["parameters"]["maxTicks"]:
        if totals[P1] > totals[P2]:
            return 1
        if totals[P2] > totals[P1]:
            return 2
        return 3
    return None
