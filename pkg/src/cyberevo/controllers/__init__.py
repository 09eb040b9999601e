"""Controller representations: stochastic matrices, decision-tree rules, fixed adversaries."""

from .base import (
    FIRST_TARGET,
    LAST_TARGET,
    RANDOM_TARGET,
    TARGET_HEURISTICS,
    Controller,
    FixedActionController,
    SleepController,
)
from .classifier import classify_counters, classify_state, state_priority, state_thresholds
from .fsm import load_fsm_adversary
from .matrix import (
    BLUE_TEAM_SIZE,
    RED_TEAM_SIZE,
    MatrixController,
    cells_per_controller,
    decode_matrix_team,
    matrix_actions,
    matrix_decide,
    normalize_row,
    team_genome_length,
    team_size,
)
from .rules import (
    OBSERVATION_FUNCTIONS,
    RuleController,
    eval_rules,
    observation_fn,
    resolve_target,
)

__all__ = [
    "BLUE_TEAM_SIZE",
    "Controller",
    "FIRST_TARGET",
    "FixedActionController",
    "LAST_TARGET",
    "MatrixController",
    "OBSERVATION_FUNCTIONS",
    "RANDOM_TARGET",
    "RED_TEAM_SIZE",
    "RuleController",
    "SleepController",
    "TARGET_HEURISTICS",
    "cells_per_controller",
    "classify_counters",
    "classify_state",
    "decode_matrix_team",
    "eval_rules",
    "load_fsm_adversary",
    "matrix_actions",
    "matrix_decide",
    "normalize_row",
    "observation_fn",
    "resolve_target",
    "state_priority",
    "state_thresholds",
    "team_genome_length",
    "team_size",
]
