"""Command line interface: leagues, benchmarks, replays, live server.

Also installed as ``arena`` for the tournament/benchmark workflows:
  arena league --agents rhea:20:200,mcts:40:100,random --maps 10 --repeats 2
  arena bench --op nextstate --threads 4 --seconds 5
  arena replay --in game.json
  planetwars serve --port 8000
"""

from __future__ import annotations

import json
import sys

import click

from .params import default_parameters, params_from_json, validate_parameters


def _load_params(path: str | None):
    params = default_parameters()
    if path:
        with open(path) as f:
            params = params_from_json(json.load(f))
    problems = validate_parameters(params)
    if problems:
        raise click.ClickException("invalid parameters: " + "; ".join(problems))
    return params


@click.group()
def main():
    """Planet Wars research platform."""


@main.command()
@click.option("--agents", required=True,
              help="comma-separated identifiers, e.g. rhea:20:200,mcts:40:100,random")
@click.option("--maps", default=10, show_default=True, help="number of map seeds (0..N-1)")
@click.option("--map-seeds", default=None, help="explicit comma-separated map seeds")
@click.option("--repeats", default=2, show_default=True)
@click.option("--swap-sides/--no-swap-sides", default=True, show_default=True)
@click.option("--tick-limit", default=2000, show_default=True)
@click.option("--workers", default=1, show_default=True)
@click.option("--params", "params_path", default=None, help="JSON parameter file")
@click.option("--out", default=None, help="write results JSON here")
def league(agents, maps, map_seeds, repeats, swap_sides, tick_limit, workers,
           params_path, out):
    """Round-robin league over fixed maps."""
    from .arena import LeagueConfig, format_league_table, run_league

    ids = [a.strip() for a in agents.split(",") if a.strip()]
    seeds = ([int(s) for s in map_seeds.split(",")] if map_seeds
             else list(range(maps)))
    cfg = LeagueConfig(agents=ids, map_seeds=seeds, repeats_per_map=repeats,
                       swap_sides=swap_sides, tick_limit=tick_limit,
                       workers=workers)

    def progress(done, total, game):
        click.echo(f"[{done}/{total}] {game['p1']} vs {game['p2']} "
                   f"map {game['mapSeed']} -> {game['outcome']} "
                   f"({game['ticks']} ticks)", err=True)

    result = run_league(cfg, _load_params(params_path), progress=progress)
    click.echo(format_league_table(result))
    if result.interrupted:
        click.echo("interrupted: partial results", err=True)
    if out:
        with open(out, "w") as f:
            json.dump(result.to_json(), f, indent=2)
        click.echo(f"results written to {out}", err=True)


@main.command()
@click.option("--op", type=click.Choice(["nextstate", "copy", "gravity"]),
              default="nextstate", show_default=True)
@click.option("--threads", type=click.Choice(["1", "4"]), default="1",
              show_default=True)
@click.option("--seconds", default=5.0, show_default=True)
@click.option("--params", "params_path", default=None)
@click.option("--json", "as_json", is_flag=True, help="emit JSON instead of text")
def bench(op, threads, seconds, params_path, as_json):
    """Micro-benchmark a key engine operation."""
    from . import bench as b

    params = _load_params(params_path)
    threads = int(threads)
    if op == "nextstate":
        result = b.bench_next_state(params, seconds, threads)
    elif op == "copy":
        result = b.bench_copy(params, seconds, threads)
    else:
        result = b.bench_gravity(params, seconds)
    if as_json:
        click.echo(json.dumps(result.__dict__))
    else:
        click.echo(result.summary())


@main.command()
@click.option("--in", "path", required=True, help="replay JSON file")
def replay(path):
    """Re-simulate a replay file and verify its final-state hash."""
    from .arena import ReplayError, replay_load, replay_verify

    try:
        summary = replay_verify(replay_load(path))
    except ReplayError as e:
        raise click.ClickException(str(e))
    click.echo(json.dumps(summary))
    if not summary["matches"]:
        sys.exit(1)


@main.command("verify-session")
@click.option("--in", "path", required=True, help="session log JSON (GET /sessions/:id/replay)")
def verify_session(path):
    """Rebuild a live session offline and verify every frame hash."""
    from .engine import ACTUATOR_CODES
    from planetwars import Action, new_game, state_hash, step_state

    with open(path) as f:
        log = json.load(f)
    if log.get("kind") != "planetwars-session-log":
        raise click.ClickException("not a session log")
    params = params_from_json(log["parameters"])
    actuators = tuple(ACTUATOR_CODES[a] for a in log["actuators"])
    state = new_game(params, int(log["seed"]), actuators)
    by_tick = {r[0]: (r[1], r[2]) for r in log["records"]}
    hashes = [state_hash(state)]
    while state.tick < int(log["finalTick"]):
        rec = by_tick.get(state.tick)
        a1 = Action.from_json(rec[0]) if rec else Action.noop()
        a2 = Action.from_json(rec[1]) if rec else Action.noop()
        step_state(state, a1, a2)
        hashes.append(state_hash(state))
    recorded = log["frameHashes"]
    matches = hashes == recorded[: len(hashes)] and len(recorded) == len(hashes)
    click.echo(json.dumps({"frames": len(hashes), "matches": matches}))
    if not matches:
        raise click.ClickException("frame hash mismatch: server was not authoritative")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
@click.option("--ui", "ui_dir", default=None,
              help="serve a static client build from this directory at /")
def serve(host, port, ui_dir):
    """Run the live session server."""
    import uvicorn

    from .server import create_app

    app = create_app()
    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    uvicorn.run(app, host=host, port=port, log_level="info")


@main.command()
@click.option("--p1", default="rhea:20:200", show_default=True)
@click.option("--p2", default="random", show_default=True)
@click.option("--map-seed", default=0, show_default=True)
@click.option("--tick-limit", default=2000, show_default=True)
@click.option("--params", "params_path", default=None)
@click.option("--replay-out", default=None, help="write the replay JSON here")
def play(p1, p2, map_seed, tick_limit, params_path, replay_out):
    """Play a single AI-vs-AI match and print the outcome."""
    from .arena import OUTCOME_NAMES, replay_save, run_match

    result = run_match(p1, p2, _load_params(params_path), map_seed, tick_limit)
    click.echo(f"{p1} vs {p2} on map {map_seed}: "
               f"{OUTCOME_NAMES[result.outcome]} after {result.ticks} ticks")
    if replay_out:
        replay_save(result.replay, replay_out)
        click.echo(f"replay written to {replay_out}", err=True)


if __name__ == "__main__":
    main()
