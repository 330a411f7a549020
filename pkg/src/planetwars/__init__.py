"""Planet Wars research platform: forward model, agents, arena, live server."""

from .actuators import ActuatorKind, action_space, legal_actions
from .engine import (
    GameState,
    Outcome,
    copy_state,
    ensure_gravity,
    is_terminal,
    new_game,
    new_game_from_planets,
    next_state,
    score,
    state_from_json,
    state_hash,
    state_to_json,
    step_state,
    total_ships,
)
from .gravity import GravityField, compute_gravity_field, gravity_at
from .mapgen import MapInfeasibleError, generate_map
from .model import Action, Owner, Planet, Transporter
from .params import (
    GameParameters,
    default_parameters,
    params_from_json,
    params_to_json,
    validate_parameters,
)

__version__ = "0.1.0"

__all__ = [
    "Action",
    "ActuatorKind",
    "GameParameters",
    "GameState",
    "GravityField",
    "MapInfeasibleError",
    "Outcome",
    "Owner",
    "Planet",
    "Transporter",
    "action_space",
    "compute_gravity_field",
    "copy_state",
    "default_parameters",
    "ensure_gravity",
    "generate_map",
    "gravity_at",
    "is_terminal",
    "legal_actions",
    "new_game",
    "new_game_from_planets",
    "next_state",
    "params_from_json",
    "params_to_json",
    "score",
    "state_from_json",
    "state_hash",
    "state_to_json",
    "step_state",
    "total_ships",
    "validate_parameters",
    "__version__",
]
