"""Reproducible experiments: matches, round-robin leagues, replays.

A match is fully determined by (parameters, map seed, agent identifiers,
agent seeds); its replay file stores exactly that plus the non-noop action
records, so any game can be reconstructed and verified by hash.  Leagues
play every unordered agent pair on every map a fixed number of times,
optionally swapping sides per repeat, and can fan matches out to worker
processes.
"""

from __future__ import annotations

import json
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field

from .agents import make_agent
from .engine import (
    Outcome,
    is_terminal,
    new_game,
    state_hash,
    step_state,
)
from .model import Action
from .params import GameParameters, params_from_json, params_to_json

__all__ = ["MatchResult", "LeagueConfig", "LeagueResult", "run_match", "run_league",
           "replay_save", "replay_load", "replay_verify", "ReplayError",
           "format_league_table"]

REPLAY_VERSION = 1

OUTCOME_NAMES = {Outcome.P1_WIN: "p1", Outcome.P2_WIN: "p2", Outcome.DRAW: "draw"}
OUTCOME_CODES = {v: k for k, v in OUTCOME_NAMES.items()}


class ReplayError(Exception):
    pass


@dataclass
class MatchResult:
    outcome: Outcome
    ticks: int
    replay: dict
    ticks_simulated: tuple[int, int]  # forward-model ticks burned per agent


def run_match(
    agent1: str,
    agent2: str,
    params: GameParameters,
    map_seed: int,
    tick_limit: int | None = None,
    agent_seeds: tuple[int, int] = (1, 2),
) -> MatchResult:
    """Play one deterministic game; unknown identifiers fail before play."""
    a1 = make_agent(agent1, agent_seeds[0])
    a2 = make_agent(agent2, agent_seeds[1])
    if tick_limit is not None:
        params = params.replace(max_ticks=tick_limit)
    state = new_game(params, map_seed)
    records = []
    outcome = is_terminal(state)
    while outcome is None:
        act1 = a1.act(state, 1)
        act2 = a2.act(state, 2)
        if act1.kind or act2.kind:
            records.append([state.tick, act1.to_json(), act2.to_json()])
        step_state(state, act1, act2)
        outcome = is_terminal(state)
    replay = {
        "version": REPLAY_VERSION,
        "kind": "planetwars-replay",
        "parameters": params_to_json(params),
        "mapSeed": map_seed,
        "actuators": ["sourceTarget", "sourceTarget"],
        "agents": [agent1, agent2],
        "agentSeeds": list(agent_seeds),
        "records": records,
        "finalTick": state.tick,
        "outcome": OUTCOME_NAMES[outcome],
        "finalHash": state_hash(state),
    }
    return MatchResult(outcome, state.tick, replay,
                       (a1.ticks_total, a2.ticks_total))


# ---------------------------------------------------------------------------
# replays

def replay_save(replay: dict, path) -> None:
    with open(path, "w") as f:
        json.dump(replay, f)
        f.write("\n")


def replay_load(path) -> dict:
    try:
        with open(path) as f:
            replay = json.load(f)
    except json.JSONDecodeError as e:
        raise ReplayError(f"malformed replay file {path}: line {e.lineno}: {e.msg}") from e
    if not isinstance(replay, dict) or replay.get("kind") != "planetwars-replay":
        raise ReplayError(f"{path} is not a replay file")
    if replay.get("version") != REPLAY_VERSION:
        raise ReplayError(f"unsupported replay version {replay.get('version')!r}")
    return replay


def replay_verify(replay: dict) -> dict:
    """Re-simulate a replay; returns the final summary and checks the hash."""
    from .engine import ACTUATOR_CODES

    params = params_from_json(replay["parameters"])
    actuators = tuple(ACTUATOR_CODES[a] for a in replay["actuators"])
    state = new_game(params, int(replay["mapSeed"]), actuators)
    by_tick = {r[0]: (r[1], r[2]) for r in replay["records"]}
    noop = Action.noop()
    final_tick = int(replay["finalTick"])
    while state.tick < final_tick and is_terminal(state) is None:
        rec = by_tick.get(state.tick)
        if rec is None:
            a1, a2 = noop, noop
        else:
            a1, a2 = Action.from_json(rec[0]), Action.from_json(rec[1])
        step_state(state, a1, a2)
    summary = {
        "finalTick": state.tick,
        "outcome": OUTCOME_NAMES.get(is_terminal(state)),
        "finalHash": state_hash(state),
        "matches": True,
    }
    if "finalHash" in replay:
        summary["matches"] = summary["finalHash"] == replay["finalHash"]
        if not summary["matches"]:
            raise ReplayError("replay hash mismatch: reconstruction diverged")
    return summary


# ---------------------------------------------------------------------------
# leagues

@dataclass
class LeagueConfig:
    agents: list[str]
    map_seeds: list[int] = field(default_factory=lambda: list(range(10)))
    repeats_per_map: int = 2
    swap_sides: bool = True
    tick_limit: int = 2000
    workers: int = 1
    base_seed: int = 0


@dataclass
class LeagueResult:
    agents: list[str]
    win_matrix: dict
    totals: dict
    draws: int
    games: list
    interrupted: bool = False

    def to_json(self) -> dict:
        return {
            "agents": self.agents,
            "winMatrix": self.win_matrix,
            "totals": self.totals,
            "draws": self.draws,
            "games": self.games,
            "interrupted": self.interrupted,
        }


def _league_tasks(cfg: LeagueConfig):
    tasks = []
    for i in range(len(cfg.agents)):
        for j in range(i + 1, len(cfg.agents)):
            for m, map_seed in enumerate(cfg.map_seeds):
                for r in range(cfg.repeats_per_map):
                    swapped = cfg.swap_sides and (r % 2 == 1)
                    first, second = (j, i) if swapped else (i, j)
                    seed1 = cfg.base_seed + 7919 * m + 31 * r + 2 * first + 1
                    seed2 = cfg.base_seed + 7919 * m + 31 * r + 2 * second + 7
                    tasks.append((first, second, map_seed, r, seed1, seed2))
    return tasks


def _run_league_task(args):
    agents, params_obj, tick_limit, task = args
    first, second, map_seed, repeat, seed1, seed2 = task
    params = params_from_json(params_obj)
    result = run_match(agents[first], agents[second], params, map_seed,
                       tick_limit, (seed1, seed2))
    return task, OUTCOME_NAMES[result.outcome], result.ticks


def _unique_labels(agents: list[str]) -> list[str]:
    seen: dict[str, int] = {}
    labels = []
    for a in agents:
        seen[a] = seen.get(a, 0) + 1
        labels.append(a if seen[a] == 1 else f"{a}#{seen[a]}")
    return labels


def run_league(cfg: LeagueConfig, params: GameParameters,
               progress=None) -> LeagueResult:
    """Play every pairing; returns the win matrix and per-game outcomes.

    Interruption (Ctrl-C) returns the partial result instead of losing it.
    """
    if len(cfg.agents) < 2:
        raise ValueError("a league needs at least two agents")
    for a in cfg.agents:
        make_agent(a)  # validate identifiers before any game runs

    names = _unique_labels(cfg.agents)
    win_matrix = {a: {b: 0 for b in names if b != a} for a in names}
    totals = {a: 0 for a in names}
    draws = 0
    games = []
    interrupted = False

    tasks = _league_tasks(cfg)
    job_args = [(cfg.agents, params_to_json(params), cfg.tick_limit, t)
                for t in tasks]

    def record(task, outcome_name, ticks):
        nonlocal draws
        first, second, map_seed, repeat, _, _ = task
        games.append({
            "p1": names[first], "p2": names[second],
            "mapSeed": map_seed, "repeat": repeat,
            "outcome": outcome_name, "ticks": ticks,
        })
        if outcome_name == "p1":
            win_matrix[names[first]][names[second]] += 1
            totals[names[first]] += 1
        elif outcome_name == "p2":
            win_matrix[names[second]][names[first]] += 1
            totals[names[second]] += 1
        else:
            draws += 1
        if progress:
            progress(len(games), len(tasks), games[-1])

    try:
        if cfg.workers <= 1:
            for args in job_args:
                record(*_run_league_task(args))
        else:
            with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
                pending = {pool.submit(_run_league_task, a) for a in job_args}
                while pending:
                    done, pending = wait(pending, return_when=FIRST_COMPLETED)
                    for fut in done:
                        record(*fut.result())
    except KeyboardInterrupt:
        interrupted = True

    return LeagueResult(names, win_matrix, totals, draws, games, interrupted)


def format_league_table(result: LeagueResult) -> str:
    """Aligned text table: row agent wins against the column agent."""
    names = result.agents
    label = {n: n.split(":")[0] for n in names}
    width = max(6, max(len(label[n]) for n in names) + 1)
    head = " " * width + "".join(f"{label[n]:>{width}}" for n in names)
    head += f"{'Wins':>{width}}"
    lines = [head]
    for row in names:
        cells = []
        for col in names:
            cells.append("-" if col == row else str(result.win_matrix[row][col]))
        line = f"{label[row]:<{width}}" + "".join(f"{c:>{width}}" for c in cells)
        line += f"{result.totals[row]:>{width}}"
        lines.append(line)
    if result.draws:
        lines.append(f"draws: {result.draws}")
    return "\n".join(lines)
