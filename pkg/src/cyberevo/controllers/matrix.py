"""Matrix controllers: one action probability row per classifier state.

Rows may contain ``None`` for structurally disabled cells; those never
receive probability mass.  Evolved controllers use fully live matrices
decoded from real-valued or discrete genomes.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..errors import ControllerError
from ..scenario import actions as act
from .base import RANDOM_TARGET
from .classifier import classify_state, state_priority

RED_MATRIX_ACTIONS = tuple(a for a in act.RED_ACTIONS if a != "Withdraw")
BLUE_MATRIX_ACTIONS = tuple(a for a in act.BLUE_ACTIONS if a != "Sleep")

RED_TEAM_SIZE = 6
BLUE_TEAM_SIZE = 5

DISCRETE_LEVELS = (0.0, 0.25, 0.5, 0.75)

# The given genome length for single-controller state machine teams;
# layouts smaller than this leave trailing genes as inert padding.
TEAM_GENOME_LENGTH = 180


def matrix_actions(side: str) -> tuple[str, ...]:
    if side == act.RED:
        return RED_MATRIX_ACTIONS
    if side == act.BLUE:
        return BLUE_MATRIX_ACTIONS
    raise ControllerError(f"no matrix layout for side {side!r}")


def team_size(side: str) -> int:
    return RED_TEAM_SIZE if side == act.RED else BLUE_TEAM_SIZE


def cells_per_controller(side: str) -> int:
    return len(state_priority(side)) * len(matrix_actions(side))


def team_genome_length(side: str, mode: str = "one") -> int:
    """Genome length for a team of matrix controllers.

    One shared controller keeps the fixed team length with padding; one
    controller per member needs the full product of cells and members.
    """
    if mode == "one":
        return max(TEAM_GENOME_LENGTH, cells_per_controller(side))
    if mode == "many":
        return cells_per_controller(side) * team_size(side)
    raise ControllerError(f"unknown controller mode {mode!r}")


def normalize_row(values: Sequence[float | None]) -> np.ndarray:
    """Scale live entries to sum to one.

    ``None`` marks a structural cell: it keeps probability zero in the
    result.  A row of all-zero live entries falls back to uniform over
    the live cells.  A row with no live cells is an error.
    """
    arr = np.array([np.nan if v is None else float(v) for v in values], dtype=float)
    live = ~np.isnan(arr)
    if not live.any():
        raise ControllerError("row has no live cells to normalize")
    if (arr[live] < 0).any():
        raise ControllerError("row contains negative entries")
    out = np.zeros(arr.shape[0], dtype=float)
    total = float(arr[live].sum())
    if total <= 0.0:
        out[live] = 1.0 / int(live.sum())
    else:
        out[live] = arr[live] / total
    return out


class MatrixController:
    """Per-state categorical action sampler."""

    def __init__(
        self,
        side: str,
        rows: dict[str, Sequence[float | None]],
        default_heuristic: str = RANDOM_TARGET,
    ):
        self.side = side
        self.states = state_priority(side)
        self.actions = matrix_actions(side)
        self.default_heuristic = default_heuristic
        missing = set(self.states) - set(rows)
        if missing:
            raise ControllerError(f"rows missing for states {sorted(missing)}")
        extra = set(rows) - set(self.states)
        if extra:
            raise ControllerError(f"rows given for unknown states {sorted(extra)}")
        self.rows: dict[str, np.ndarray] = {}
        self._cums: dict[str, np.ndarray] = {}
        for state, row in rows.items():
            if len(row) != len(self.actions):
                raise ControllerError(
                    f"row {state} has {len(row)} cells, expected {len(self.actions)}"
                )
            probs = normalize_row(row)
            self.rows[state] = probs
            self._cums[state] = np.cumsum(probs)

    def sample(self, state: str, rng: np.random.Generator) -> str:
        if state not in self._cums:
            raise ControllerError(f"unknown state {state!r}")
        idx = int(np.searchsorted(self._cums[state], rng.random(), side="right"))
        return self.actions[min(idx, len(self.actions) - 1)]

    def decide(self, observation, context, rng) -> tuple[str, str]:
        state = classify_state(self.side, observation, context)
        return self.sample(state, rng), self.default_heuristic


def matrix_decide(controller: MatrixController, state: str, rng: np.random.Generator) -> str:
    """Sample an action for a classified state."""
    return controller.sample(state, rng)


def decode_matrix_team(
    genome: Sequence[float] | np.ndarray,
    side: str,
    mode: str = "one",
    encoding: str = "continuous",
) -> list[MatrixController]:
    """Decode a flat genome into a team's matrix controllers.

    Continuous genes live in [0, 1]; discrete genes are codes 0..3 that
    map onto (0.0, 0.25, 0.5, 0.75).  Genes are consumed row-major per
    controller; surplus genes are padding and stay unused.
    """
    cells = cells_per_controller(side)
    count = 1 if mode == "one" else team_size(side)
    needed = cells * count
    genome = np.asarray(genome)
    if genome.ndim != 1 or genome.shape[0] < needed:
        raise ControllerError(f"genome of length {genome.shape} cannot fill {needed} cells")
    if encoding == "continuous":
        values = genome.astype(float)
        if ((values < 0) | (values > 1)).any():
            raise ControllerError("continuous genes must lie in [0, 1]")
    elif encoding == "discrete4":
        codes = genome.astype(int)
        if ((codes < 0) | (codes > 3)).any():
            raise ControllerError("discrete genes must be codes 0..3")
        values = np.array(DISCRETE_LEVELS, dtype=float)[codes]
    else:
        raise ControllerError(f"unknown matrix encoding {encoding!r}")
    states = state_priority(side)
    n_actions = len(matrix_actions(side))
    team = []
    for k in range(count):
        block = values[k * cells:(k + 1) * cells].reshape(len(states), n_actions)
        rows = {state: block[i] for i, state in enumerate(states)}
        team.append(MatrixController(side, rows))
    return team
