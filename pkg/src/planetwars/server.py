"""Authoritative live-game service.

One asyncio tick loop per session owns that session's state; websocket
readers only deposit inputs into a per-player latch and subscribe to the
frame fan-out.  Frames are full-state JSON snapshots (gravity omitted);
the downsampled gravity grid goes out once, in the init message.  Every
applied (tick, a1, a2) triple and every broadcast frame's state hash are
logged so a session can be replayed and verified offline.
"""

from __future__ import annotations

import asyncio
import itertools
import json
import logging
import time
from dataclasses import dataclass, field
from enum import Enum

from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect

from .agents import Agent, make_agent
from .engine import (
    ACTUATOR_CODES,
    SLINGSHOT,
    SOURCE_TARGET,
    Outcome,
    is_terminal,
    new_game,
    state_hash,
    state_to_json,
    step_state,
)
from .model import Action
from .params import GameParameters, params_from_json, params_to_json, validate_parameters

log = logging.getLogger("planetwars.server")

OUTCOME_NAMES = {Outcome.P1_WIN: "p1", Outcome.P2_WIN: "p2", Outcome.DRAW: "draw"}


class SessionStatus(str, Enum):
    LOBBY = "lobby"
    RUNNING = "running"
    PAUSED = "paused"
    FINISHED = "finished"


@dataclass
class Seat:
    agent: Agent | None = None         # None = human seat
    pending: Action | None = None      # last input since the previous tick
    ai_busy: bool = False
    ai_result: Action | None = None


@dataclass
class Session:
    id: str
    state: object
    params: GameParameters
    seed: int
    human_side: int                    # 0 = none (AI vs AI)
    tick_rate: float
    grace_seconds: float
    ai_time_cap: float
    seats: dict[int, Seat]
    status: SessionStatus = SessionStatus.LOBBY
    outcome: Outcome | None = None
    subscribers: list = field(default_factory=list)
    human_socket: object = None
    disconnect_at: float | None = None
    action_log: list = field(default_factory=list)
    frame_hashes: list = field(default_factory=list)
    task: asyncio.Task | None = None
    ai_noop_count: int = 0

    def frame(self) -> dict:
        return {"type": "frame", "tick": self.state.tick,
                "state": state_to_json(self.state)}


def _session_info(s: Session) -> dict:
    return {
        "id": s.id,
        "status": s.status.value,
        "tick": s.state.tick,
        "tickRate": s.tick_rate,
        "humanSide": s.human_side or None,
        "agents": {str(p): (seat.agent.name if seat.agent else "human")
                   for p, seat in s.seats.items()},
        "outcome": OUTCOME_NAMES.get(s.outcome),
    }


def create_app(max_subscriber_backlog: int = 8) -> FastAPI:
    app = FastAPI(title="planetwars")
    sessions: dict[str, Session] = {}
    counter = itertools.count(1)
    app.state.sessions = sessions

    def get_session(session_id: str) -> Session:
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(404, f"no such session: {session_id}")
        return session

    @app.get("/agents")
    def list_agents():
        from .agents import agent_identifiers

        return {"agents": agent_identifiers(),
                "examples": ["random", "heuristic", "rhea:20:200", "mcts:40:100"]}

    @app.post("/sessions")
    def create_session(body: dict):
        params = (params_from_json(body["parameters"])
                  if body.get("parameters") else GameParameters())
        problems = validate_parameters(params)
        if problems:
            raise HTTPException(422, {"invalidParameters": problems})
        seed = int(body.get("seed", 0))
        human_side = body.get("humanSide")
        human_side = 0 if human_side in (None, 0, "none") else int(human_side)
        if human_side not in (0, 1, 2):
            raise HTTPException(422, "humanSide must be 1, 2 or null")
        tick_rate = float(body.get("tickRate", 30.0))
        if not (0.1 <= tick_rate <= 240.0):
            raise HTTPException(422, "tickRate out of range")

        ai_id = body.get("ai", "heuristic")
        ai2_id = body.get("ai2", ai_id)
        seats: dict[int, Seat] = {}
        try:
            if human_side == 0:
                seats[1] = Seat(agent=make_agent(ai_id, seed=seed + 1))
                seats[2] = Seat(agent=make_agent(ai2_id, seed=seed + 2))
            else:
                seats[human_side] = Seat(agent=None)
                seats[3 - human_side] = Seat(agent=make_agent(ai_id, seed=seed + 1))
        except ValueError as e:
            raise HTTPException(422, str(e)) from e

        actuators = [SOURCE_TARGET, SOURCE_TARGET]
        if human_side:
            actuators[human_side - 1] = SLINGSHOT
        for side_key, name in (("actuator1", 1), ("actuator2", 2)):
            if side_key in body:
                code = ACTUATOR_CODES.get(body[side_key])
                if code is None:
                    raise HTTPException(422, f"unknown actuator: {body[side_key]}")
                actuators[name - 1] = code

        try:
            state = new_game(params, seed, tuple(actuators))
        except Exception as e:
            raise HTTPException(422, f"map generation failed: {e}") from e

        session = Session(
            id=f"g{next(counter)}",
            state=state,
            params=params,
            seed=seed,
            human_side=human_side,
            tick_rate=tick_rate,
            grace_seconds=float(body.get("graceSeconds", 5.0)),
            ai_time_cap=float(body.get("aiTimeCap", 1.0 / tick_rate)),
            seats=seats,
        )
        session.frame_hashes.append(state_hash(state))
        sessions[session.id] = session
        return {"id": session.id, "session": _session_info(session)}

    @app.get("/sessions/{session_id}")
    def session_status(session_id: str):
        return _session_info(get_session(session_id))

    @app.get("/sessions/{session_id}/replay")
    def session_replay(session_id: str):
        s = get_session(session_id)
        return {
            "kind": "planetwars-session-log",
            "parameters": params_to_json(s.params),
            "seed": s.seed,
            "actuators": state_to_json(s.state)["actuators"],
            "records": s.action_log,
            "frameHashes": s.frame_hashes,
            "finalTick": s.state.tick,
            "outcome": OUTCOME_NAMES.get(s.outcome),
        }

    @app.post("/sessions/{session_id}/start")
    async def start_session(session_id: str):
        s = get_session(session_id)
        if s.status == SessionStatus.FINISHED:
            raise HTTPException(409, "session already finished")
        s.status = SessionStatus.RUNNING
        if s.task is None or s.task.done():
            s.task = asyncio.create_task(_tick_loop(s))
        return _session_info(s)

    @app.post("/sessions/{session_id}/pause")
    def pause_session(session_id: str):
        s = get_session(session_id)
        if s.status == SessionStatus.RUNNING:
            s.status = SessionStatus.PAUSED
        return _session_info(s)

    @app.delete("/sessions/{session_id}")
    def delete_session(session_id: str):
        s = get_session(session_id)
        if s.task and not s.task.done():
            s.task.cancel()
        del sessions[s.id]
        return {"deleted": s.id}

    async def _broadcast(s: Session, message: dict):
        text = json.dumps(message)
        for q in list(s.subscribers):
            if q.full():
                try:
                    q.get_nowait()  # drop the oldest; clients want the latest
                except asyncio.QueueEmpty:
                    pass
            q.put_nowait(text)

    def _gather_action(s: Session, player: int) -> Action:
        seat = s.seats[player]
        if seat.agent is None:
            action = seat.pending or Action.noop()
            seat.pending = None
            return action
        if seat.ai_result is not None:
            action = seat.ai_result
            seat.ai_result = None
            return action
        return Action.noop()

    async def _request_ai(s: Session, player: int):
        """Kick off the seat's AI in a worker thread with a wall-clock cap."""
        seat = s.seats[player]
        if seat.agent is None or seat.ai_busy:
            return
        seat.ai_busy = True
        state_copy = s.state.copy()

        def compute():
            return seat.agent.act(state_copy, player)

        async def runner():
            try:
                action = await asyncio.get_event_loop().run_in_executor(None, compute)
                seat.ai_result = action
            except Exception:
                log.exception("AI for seat %d failed; playing noop", player)
                seat.ai_result = Action.noop()
            finally:
                seat.ai_busy = False

        task = asyncio.create_task(runner())
        try:
            await asyncio.wait_for(asyncio.shield(task), timeout=s.ai_time_cap)
        except asyncio.TimeoutError:
            # over budget: this tick plays noop, the result lands later
            s.ai_noop_count += 1
            log.warning("session %s: AI seat %d over %.3fs cap, noop this tick",
                        s.id, player, s.ai_time_cap)

    async def _tick_loop(s: Session):
        interval = 1.0 / s.tick_rate
        next_due = time.monotonic() + interval
        try:
            while True:
                if s.status != SessionStatus.RUNNING:
                    if s.status in (SessionStatus.FINISHED,):
                        return
                    await asyncio.sleep(0.02)
                    next_due = time.monotonic() + interval
                    continue

                if (s.human_side and s.human_socket is None
                        and s.disconnect_at is not None
                        and time.monotonic() - s.disconnect_at > s.grace_seconds):
                    s.status = SessionStatus.PAUSED
                    await _broadcast(s, {"type": "status", "status": "paused",
                                         "reason": "player disconnected"})
                    continue

                for player, seat in s.seats.items():
                    if seat.agent is not None and seat.ai_result is None:
                        await _request_ai(s, player)

                a1 = _gather_action(s, 1)
                a2 = _gather_action(s, 2)
                if a1.kind or a2.kind:
                    s.action_log.append([s.state.tick, a1.to_json(), a2.to_json()])
                step_state(s.state, a1, a2)
                s.frame_hashes.append(state_hash(s.state))
                await _broadcast(s, s.frame())

                s.outcome = is_terminal(s.state)
                if s.outcome is not None:
                    s.status = SessionStatus.FINISHED
                    await _broadcast(s, {
                        "type": "result",
                        "outcome": OUTCOME_NAMES[s.outcome],
                        "tick": s.state.tick,
                    })
                    return

                now = time.monotonic()
                delay = next_due - now
                next_due += interval
                if delay > 0:
                    await asyncio.sleep(delay)
                elif delay < -1.0:
                    next_due = now + interval  # fell badly behind; resync
        except asyncio.CancelledError:
            pass

    @app.websocket("/sessions/{session_id}/ws")
    async def session_ws(ws: WebSocket, session_id: str, role: str = "spectator"):
        session = sessions.get(session_id)
        if session is None:
            await ws.close(code=4404)
            return
        await ws.accept()
        is_player = False
        if role == "player" and session.human_side and session.human_socket is None:
            session.human_socket = ws
            session.disconnect_at = None
            is_player = True

        queue: asyncio.Queue = asyncio.Queue(max_subscriber_backlog)
        session.subscribers.append(queue)
        init = {
            "type": "init",
            "sessionId": session.id,
            "seat": "player" if is_player else "spectator",
            "humanSide": session.human_side or None,
            "tickRate": session.tick_rate,
            "status": session.status.value,
            "parameters": params_to_json(session.params),
            "gravity": session.state.gravity.downsample() if session.state.gravity else None,
            "state": state_to_json(session.state),
        }
        await ws.send_text(json.dumps(init))

        async def pump_out():
            while True:
                await ws.send_text(await queue.get())

        out_task = asyncio.create_task(pump_out())
        try:
            while True:
                raw = await ws.receive_text()
                try:
                    msg = json.loads(raw)
                except json.JSONDecodeError:
                    await ws.send_text(json.dumps({"type": "error",
                                                   "reason": "malformed JSON"}))
                    continue
                if msg.get("type") != "input":
                    continue
                if not is_player:
                    await ws.send_text(json.dumps({"type": "error",
                                                   "reason": "not this session's player seat"}))
                    continue
                if session.status == SessionStatus.FINISHED:
                    await ws.send_text(json.dumps({"type": "error",
                                                   "reason": "session finished"}))
                    continue
                try:
                    action = Action.from_json(msg.get("action", {}))
                except (KeyError, TypeError) as e:
                    await ws.send_text(json.dumps({"type": "error",
                                                   "reason": f"bad action: {e}"}))
                    continue
                # latest input inside one tick wins (one action per tick)
                session.seats[session.human_side].pending = action
        except WebSocketDisconnect:
            pass
        finally:
            out_task.cancel()
            if queue in session.subscribers:
                session.subscribers.remove(queue)
            if session.human_socket is ws:
                session.human_socket = None
                session.disconnect_at = time.monotonic()

    return app


app = create_app()
