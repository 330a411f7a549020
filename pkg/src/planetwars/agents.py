"""AI players over the forward model.

Four agents: uniform random, a scripted heuristic, rolling horizon
evolution (a (1+1) ES over fixed-length action sequences with a shift
buffer), and open-loop UCT.  The planners consume the fully observable
state, model the opponent as the random agent, and burn their evaluation
budget through the fused playout kernel; each exposes a forward-model tick
counter so budgets can be audited.

Agents never touch the live game: every evaluation runs on a private copy.
"""

from __future__ import annotations

import math
import random
from typing import NamedTuple

import numpy as np

from . import _kernel as K
from .actuators import (
    action_space,
    action_to_index,
    index_to_action,
    legal_actions,
    sample_random_action,
)
from .engine import GameState, ensure_gravity
from .model import Action

__all__ = ["AgentBudget", "Agent", "RandomAgent", "HeuristicAgent", "RheaAgent",
           "MctsAgent", "make_agent", "agent_identifiers"]

WIN_BONUS = 1000.0

RHEA_DEFAULT = (20, 200)
MCTS_DEFAULT = (40, 100)


class AgentBudget(NamedTuple):
    iterations: int
    horizon: int  # forward-model ticks per evaluation


class Agent:
    """Base: stateful per-seat player; subclasses implement act()."""

    name = "agent"

    def __init__(self):
        self.ticks_total = 0
        self.ticks_last_move = 0

    def act(self, state: GameState, player: int) -> Action:
        raise NotImplementedError

    def reset(self) -> None:
        """Forget per-game carry-over (called between games)."""


class RandomAgent(Agent):
    name = "random"

    def __init__(self, seed: int = 0):
        super().__init__()
        self._rng = random.Random(seed)

    def act(self, state: GameState, player: int) -> Action:
        return sample_random_action(state, player, self._rng.random())


class HeuristicAgent(Agent):
    """Scripted source-target player.

    Launches from the strongest owned planet whenever its transporter is
    home, at the target minimizing garrison + growth * estimated travel
    time; otherwise waits.
    """

    name = "heuristic"

    def act(self, state: GameState, player: int) -> Action:
        if state.actuators[player - 1] != 0:
            return Action.noop()
        P = state.P
        n = P.shape[0]
        owned = [i for i in range(n) if P[i, K.C_OWNER] == player]
        if not owned:
            return Action.noop()
        strongest = max(owned, key=lambda i: (P[i, K.C_SHIPS], -i))
        pending = state.pending_source[player - 1]
        if pending is None:
            if P[strongest, K.C_TSTATUS] != 0.0:
                return Action.noop()
            return Action.select(strongest)
        # second half of the pair: cheapest conquest from the pending source
        src = pending
        speed = state.params.ship_launch_speed
        best_j = -1
        best_cost = math.inf
        for j in range(n):
            if P[j, K.C_OWNER] == player or j == src:
                continue
            dx = P[j, K.C_X] - P[src, K.C_X]
            dy = P[j, K.C_Y] - P[src, K.C_Y]
            travel = math.sqrt(dx * dx + dy * dy) / speed if speed > 0 else 0.0
            cost = P[j, K.C_SHIPS] + P[j, K.C_GROWTH] * travel
            if cost < best_cost:
                best_cost = cost
                best_j = j
        if best_j < 0:
            return Action.noop()
        return Action.select(best_j)


def _playout_args(state: GameState):
    ensure_gravity(state)
    head, nxt, ocell = state._occ
    return state.gravity.grid, head, nxt, ocell


class _Planner(Agent):
    def __init__(self, budget: AgentBudget, seed: int = 0):
        super().__init__()
        self.budget = budget
        self._rng = random.Random(seed)
        self._krng = K.make_rng_state(self._rng.getrandbits(63))

    def _rollout(self, state: GameState, player: int, plan: np.ndarray) -> tuple[float, int]:
        """Score of `player` after rolling `plan` against a random opponent."""
        grid, head, nxt, ocell = _playout_args(state)
        w = state.copy()
        if player == 1:
            plan1, plan2 = plan, _RANDOM_PLAN
        else:
            plan1, plan2 = _RANDOM_PLAN, plan
        done, outcome = K._simulate(
            w.P, w.ctl, w.acts, grid, head, nxt, ocell, w.pv, w.tick,
            w.params.max_ticks, plan1, plan2, self.budget.horizon, self._krng,
        )
        self.ticks_last_move += done
        fitness = float(K._score(w.P, player, 10.0))
        if outcome == player:
            fitness += WIN_BONUS
        elif outcome == 3 - player:
            fitness -= WIN_BONUS
        return fitness, done


_RANDOM_PLAN = np.full(0, -1, dtype=np.int64)  # empty plan = sample every tick


class RheaAgent(_Planner):
    """(1+1) rolling horizon evolution with a shift buffer.

    Per move: re-evaluate the shifted incumbent once, then run
    budget.iterations mutate-evaluate-select steps with per-gene mutation
    probability 1/horizon (at least one gene forced).  Returns the first
    gene of the incumbent.
    """

    def __init__(self, budget: AgentBudget = AgentBudget(*RHEA_DEFAULT), seed: int = 0):
        super().__init__(budget, seed)
        self.name = f"rhea:{budget.iterations}:{budget.horizon}"
        self._genome: np.ndarray | None = None

    def reset(self):
        self._genome = None

    def act(self, state: GameState, player: int) -> Action:
        self.ticks_last_move = 0
        space = action_space(state.actuators[player - 1], state.num_planets)
        horizon = self.budget.horizon
        rng = self._rng
        if self._genome is None or self._genome.shape[0] != horizon:
            genome = np.array([rng.randrange(space) for _ in range(horizon)],
                              dtype=np.int64)
        else:
            genome = self._genome
            genome[:-1] = genome[1:]
            genome[-1] = rng.randrange(space)
        best_fit, _ = self._rollout(state, player, genome)

        mutate_p = 1.0 / horizon
        for _ in range(self.budget.iterations):
            mutant = genome.copy()
            changed = False
            for g in range(horizon):
                if rng.random() < mutate_p:
                    mutant[g] = rng.randrange(space)
                    changed = True
            if not changed:
                mutant[rng.randrange(horizon)] = rng.randrange(space)
            fit, _ = self._rollout(state, player, mutant)
            if fit >= best_fit:
                best_fit = fit
                genome = mutant

        self._genome = genome
        self.ticks_total += self.ticks_last_move
        return index_to_action(int(genome[0]), state.actuators[player - 1],
                               state.num_planets)


class _Node:
    __slots__ = ("visits", "value", "children", "untried")

    def __init__(self, actions):
        self.visits = 0
        self.value = 0.0
        self.children: dict[int, _Node] = {}
        self.untried = list(actions)


def ucb1_select(node: _Node, c: float, rng: random.Random) -> int:
    """UCB1 over visited children; ties broken uniformly at random."""
    log_n = math.log(node.visits)
    best, best_val = [], -math.inf
    for action, child in node.children.items():
        val = child.value / child.visits + c * math.sqrt(log_n / child.visits)
        if val > best_val:
            best, best_val = [action], val
        elif val == best_val:
            best.append(action)
    return best[0] if len(best) == 1 else best[rng.randrange(len(best))]


class MctsAgent(_Planner):
    """Open-loop UCT: the tree stores action sequences, re-simulated from
    the root each iteration; rollouts are random to the horizon and scores
    are min-max normalized to [0, 1] per move."""

    EXPLORATION = math.sqrt(2.0)

    def __init__(self, budget: AgentBudget = AgentBudget(*MCTS_DEFAULT), seed: int = 0):
        super().__init__(budget, seed)
        self.name = f"mcts:{budget.iterations}:{budget.horizon}"

    def act(self, state: GameState, player: int) -> Action:
        self.ticks_last_move = 0
        act = state.actuators[player - 1]
        n = state.num_planets
        space = action_space(act, n)
        root_actions = [action_to_index(a, act, n) for a in legal_actions(state, player)]
        if len(root_actions) == 1:
            only = root_actions[0]
            self.ticks_total += self.ticks_last_move
            return index_to_action(only, act, n)
        root = _Node(root_actions)
        rng = self._rng
        horizon = self.budget.horizon
        plan = np.full(horizon, -1, dtype=np.int64)

        lo, hi = math.inf, -math.inf
        for _ in range(self.budget.iterations):
            node = root
            path = []
            while not node.untried and node.children and len(path) < horizon:
                a = ucb1_select(node, self.EXPLORATION, rng)
                path.append(a)
                node = node.children[a]
            if node.untried and len(path) < horizon:
                a = node.untried.pop(rng.randrange(len(node.untried)))
                node.children[a] = _Node(range(space))
                path.append(a)

            plan[:] = -1
            plan[: len(path)] = path
            raw, _ = self._rollout(state, player, plan)

            lo, hi = min(lo, raw), max(hi, raw)
            reward = 0.5 if hi == lo else (raw - lo) / (hi - lo)
            node = root
            node.visits += 1
            node.value += reward
            for a in path:
                node = node.children[a]
                node.visits += 1
                node.value += reward

        best = max(root.children.items(), key=lambda kv: kv[1].visits)[0]
        self.ticks_total += self.ticks_last_move
        return index_to_action(best, act, n)


def make_agent(spec: str, seed: int = 0) -> Agent:
    """Build an agent from its string identifier.

    Identifiers: "random", "heuristic", "rhea[:ITER:HORIZON]",
    "mcts[:ITER:HORIZON]".
    """
    parts = spec.strip().split(":")
    kind = parts[0].lower()
    if kind == "random":
        return RandomAgent(seed)
    if kind == "heuristic":
        return HeuristicAgent()
    if kind in ("rhea", "mcts"):
        default = RHEA_DEFAULT if kind == "rhea" else MCTS_DEFAULT
        try:
            iters = int(parts[1]) if len(parts) > 1 else default[0]
            horizon = int(parts[2]) if len(parts) > 2 else default[1]
        except ValueError as e:
            raise ValueError(f"bad agent budget in {spec!r}") from e
        if iters < 1 or horizon < 1:
            raise ValueError(f"agent budget must be positive: {spec!r}")
        budget = AgentBudget(iters, horizon)
        return RheaAgent(budget, seed) if kind == "rhea" else MctsAgent(budget, seed)
    raise ValueError(f"unknown agent identifier: {spec!r}")


def agent_identifiers() -> list[str]:
    return ["random", "heuristic", "rhea:ITER:HORIZON", "mcts:ITER:HORIZON"]
