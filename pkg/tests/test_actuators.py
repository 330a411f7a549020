import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planetwars import (
    Action,
    Owner,
    action_space,
    default_parameters,
    legal_actions,
    new_game,
    next_state,
    state_to_json,
)
from planetwars.actuators import (
    ActuatorKind,
    action_to_index,
    index_to_action,
    sample_random_action,
)
from planetwars.engine import SLINGSHOT, SOURCE_TARGET, SOURCE_TARGET_PAIR, step_state

from test_engine import two_planet_game

NOOP = Action.noop()


# ---------------------------------------------------------------------------
# action spaces and the flat index codec

def test_action_space_sizes():
    assert action_space(ActuatorKind.SOURCE_TARGET, 20) == 21
    assert action_space(ActuatorKind.SLINGSHOT, 10) == 12
    assert action_space(ActuatorKind.SOURCE_TARGET, 100) == 101
    assert action_space(ActuatorKind.SOURCE_TARGET_PAIR, 10) == 101


@pytest.mark.parametrize("act", list(ActuatorKind))
@pytest.mark.parametrize("n", [2, 3, 10, 37, 100])
def test_index_codec_is_a_bijection_over_the_space(act, n):
    seen = set()
    for idx in range(action_space(act, n)):
        a = index_to_action(idx, act, n)
        seen.add(a)
        if act == ActuatorKind.SOURCE_TARGET_PAIR and a.kind == 4 and a.a == a.b:
            continue  # i==j pair indices decode to themselves but act as noop
        assert action_to_index(a, act, n) == idx
    # distinct indices produce distinct actions
    assert len(seen) == action_space(act, n)


@given(st.integers(min_value=2, max_value=100))
@settings(max_examples=20, deadline=None)
def test_legal_actions_bounded_by_space(n):
    # coarse gravity cells: this test only cares about action bookkeeping
    p = default_parameters().replace(num_planets=n, map_width=3000.0,
                                     map_height=3000.0, gravity_grid_cell=50.0)
    s = new_game(p, seed=1, actuators=(SOURCE_TARGET, SLINGSHOT))
    assert len(legal_actions(s, 1)) <= action_space(ActuatorKind.SOURCE_TARGET, n)
    assert len(legal_actions(s, 2)) <= action_space(ActuatorKind.SLINGSHOT, n)


# ---------------------------------------------------------------------------
# source-target decoding

def test_two_phase_select_launches_half_the_ships():
    s = two_planet_game(gravitational_constant=0.0, transport_tax=0.0)
    s = next_state(s, Action.select(0), NOOP)
    assert s.pending_source[0] == 0
    ships_at_launch = s.planets[0].ships
    s = next_state(s, Action.select(1), NOOP)
    assert s.pending_source[0] is None
    t = s.planets[0].transporter
    assert t.status == 1
    assert t.payload == pytest.approx(0.5 * ships_at_launch)
    # remaining ships: the other half, plus this tick's growth
    assert s.planets[0].ships == pytest.approx(
        0.5 * ships_at_launch + s.planets[0].growth_rate
    )
    # heading straight for planet 1
    assert t.vx > 0 and t.vy == 0.0


def test_select_enemy_planet_ignored():
    s = two_planet_game()
    r = next_state(s, Action.select(1), NOOP)  # planet 1 is P2's
    assert r.pending_source[0] is None
    assert state_to_json(r) == state_to_json(next_state(s, NOOP, NOOP))


def test_select_planet_with_flying_transporter_ignored():
    s = two_planet_game()
    s.P[0, 7] = 1.0  # transporter already in transit
    s.P[0, 8:10] = (300.0, 100.0)
    r = next_state(s, Action.select(0), NOOP)
    assert r.pending_source[0] is None


def test_reselecting_source_cancels():
    s = two_planet_game()
    s = next_state(s, Action.select(0), NOOP)
    s = next_state(s, Action.select(0), NOOP)
    assert s.pending_source[0] is None
    assert s.planets[0].transporter.status == 0


def test_noop_clears_pending_source():
    s = two_planet_game()
    s = next_state(s, Action.select(0), NOOP)
    s = next_state(s, NOOP, NOOP)
    assert s.pending_source[0] is None


def test_one_shot_pair_actuator_launches_in_one_tick():
    s = two_planet_game(gravitational_constant=0.0)
    s.acts[0] = SOURCE_TARGET_PAIR
    s = next_state(s, Action.pair(0, 1), NOOP)
    assert s.planets[0].transporter.status == 1
    assert s.planets[0].transporter.payload > 0


# ---------------------------------------------------------------------------
# slingshot decoding

def test_press_loads_and_release_launches_along_turret():
    # zero G so the velocity seen after the tick is exactly the launch vector
    s = two_planet_game(transport_tax=0.0, gravitational_constant=0.0)
    s.acts[0] = SLINGSHOT
    s.P[0, 5] = 50.0
    s.P[0, 6] = 1.234
    rate = s.params.turret_rotation_rate
    # press lands on tick 1, then 9 held ticks, release on tick 11
    s = next_state(s, Action.press(0), NOOP)
    for _ in range(9):
        s = next_state(s, NOOP, NOOP)
    assert s.press_latch[0] == 0
    assert s.planets[0].transporter.payload == pytest.approx(10.0)
    theta_at_release = s.planets[0].turret_angle
    s = next_state(s, Action.release(), NOOP)
    t = s.planets[0].transporter
    assert t.status == 1
    assert t.payload == pytest.approx(10.0)
    # 50 - 10 loaded, plus 11 ticks of growth
    assert s.planets[0].ships == pytest.approx(40.0 + 11 * s.planets[0].growth_rate)
    # unit launch direction equals the turret angle of the release tick
    speed = s.params.ship_launch_speed
    assert t.vx / speed == pytest.approx(math.cos(theta_at_release), abs=1e-9)
    assert t.vy / speed == pytest.approx(math.sin(theta_at_release), abs=1e-9)


def test_load_rate_capped_by_available_ships():
    s = two_planet_game()
    s.acts[0] = SLINGSHOT
    s.P[0, 5] = 0.3
    s.P[0, 3] = 0.0  # no growth, keep the arithmetic clean
    s = next_state(s, Action.press(0), NOOP)
    assert s.planets[0].transporter.payload == pytest.approx(0.3)
    assert s.planets[0].ships == 0.0


def test_press_neutral_planet_no_latch():
    s = two_planet_game()
    s.acts[0] = SLINGSHOT
    s.P[1, 4] = 0.0
    r = next_state(s, Action.press(1), NOOP)
    assert r.press_latch[0] is None
    assert state_to_json(r) == state_to_json(next_state(s, NOOP, NOOP))


def test_release_without_press_ignored():
    s = two_planet_game()
    s.acts[0] = SLINGSHOT
    r = next_state(s, Action.release(), NOOP)
    assert state_to_json(r) == state_to_json(next_state(s, NOOP, NOOP))


def test_pressing_second_planet_releases_first():
    p = default_parameters().replace(num_planets=3, transport_tax=0.0)
    from planetwars import Planet, new_game_from_planets
    planets = [
        Planet(0, 120.0, 240.0, 20.0, 0.05, Owner.P1, 50.0),
        Planet(1, 520.0, 240.0, 20.0, 0.05, Owner.P2, 50.0),
        Planet(2, 320.0, 120.0, 15.0, 0.04, Owner.P1, 30.0),
    ]
    s = new_game_from_planets(planets, p, (SLINGSHOT, SOURCE_TARGET))
    s = step_state(s, Action.press(0), NOOP)
    for _ in range(4):
        s = step_state(s, NOOP, NOOP)
    s = step_state(s, Action.press(2), NOOP)
    assert s.planets[0].transporter.status == 1  # forced launch of the first
    assert s.planets[0].transporter.payload == pytest.approx(5.0)
    assert s.press_latch[0] == 2
    assert s.planets[2].transporter.payload == pytest.approx(1.0)


# ---------------------------------------------------------------------------
# legal actions

def test_legal_actions_at_symmetric_start(game):
    legal = legal_actions(game, 1)
    assert legal == [NOOP, Action.select(0)]


def test_legal_actions_with_pending_source(game):
    s = next_state(game, Action.select(0), NOOP)
    legal = legal_actions(s, 1)
    assert len(legal) == s.num_planets  # noop + all but the source
    assert NOOP in legal
    assert Action.select(0) not in legal


def test_eliminated_player_only_noop(game):
    s = game
    s.P[s.P[:, 4] == 1.0, 4] = 0.0
    assert legal_actions(s, 1) == [NOOP]


def test_slingshot_legal_actions_while_latched():
    s = two_planet_game()
    s.acts[0] = SLINGSHOT
    s = next_state(s, Action.press(0), NOOP)
    legal = legal_actions(s, 1)
    assert NOOP in legal and Action.release() in legal
    assert Action.press(0) not in legal  # same planet press == keep loading
    assert Action.press(1) in legal      # switches = forced release


def test_sampler_agrees_with_enumeration(game):
    # the kernel sampler must cover exactly the enumerated legal set,
    # uniformly
    s = next_state(game, Action.select(0), Action.press(1))
    rng = np.random.default_rng(0)
    for player in (1, 2):
        legal = legal_actions(s, player)
        counts = {a: 0 for a in legal}
        draws = 4000 * len(legal)
        for _ in range(draws):
            a = sample_random_action(s, player, rng.random())
            assert a in counts
            counts[a] += 1
        for a, c in counts.items():
            assert c / draws == pytest.approx(1 / len(legal), rel=0.15), a


# ---------------------------------------------------------------------------
# conservation & illegal-action equivalence

def total_everything(s):
    return float(s.P[:, 5].sum() + s.P[:, 12].sum())


def test_decode_conserves_ships():
    s = two_planet_game(transport_tax=0.0)
    s.P[:, 3] = 0.0  # silence growth; decode itself must conserve
    before = total_everything(s)
    s = next_state(s, Action.select(0), NOOP)
    s = next_state(s, Action.select(1), NOOP)
    assert total_everything(s) == pytest.approx(before, abs=1e-12)
    s2 = two_planet_game(transport_tax=0.0)
    s2.acts = np.array([SLINGSHOT, SOURCE_TARGET], dtype=np.int64)
    s2.P[:, 3] = 0.0
    before = total_everything(s2)
    s2 = next_state(s2, Action.press(0), NOOP)
    s2 = next_state(s2, Action.release(), NOOP)
    assert total_everything(s2) == pytest.approx(before, abs=1e-12)


def illegal_actions_for(state, player):
    """Actions in the space that the legal set excludes."""
    act = state.actuators[player - 1]
    n = state.num_planets
    legal = set(legal_actions(state, player))
    space = [index_to_action(i, act, n) for i in range(action_space(act, n))]
    return [a for a in space if a not in legal]


def test_illegal_actions_equal_noop_successor():
    rng = np.random.default_rng(12)
    pairs_checked = 0
    state = new_game(default_parameters(), seed=5,
                     actuators=(SOURCE_TARGET, SLINGSHOT))
    while pairs_checked < 1000:
        for player in (1, 2):
            illegal = illegal_actions_for(state, player)
            if not illegal:
                continue
            a = illegal[int(rng.integers(len(illegal)))]
            other = sample_random_action(state, 3 - player, rng.random())
            if player == 1:
                with_illegal = next_state(state, a, other)
                with_noop = next_state(state, NOOP, other)
            else:
                with_illegal = next_state(state, other, a)
                with_noop = next_state(state, other, NOOP)
            assert np.array_equal(with_illegal.P, with_noop.P)
            assert np.array_equal(with_illegal.ctl, with_noop.ctl)
            pairs_checked += 1
        a1 = sample_random_action(state, 1, rng.random())
        a2 = sample_random_action(state, 2, rng.random())
        state = step_state(state, a1, a2)
        if state.tick >= 1500:
            state = new_game(default_parameters(), seed=int(rng.integers(1000)),
                             actuators=(SOURCE_TARGET, SLINGSHOT))
