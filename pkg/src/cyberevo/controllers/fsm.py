"""Fixed state machine adversaries loaded from their data table."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from ..errors import ControllerError
from .classifier import state_priority
from .matrix import MatrixController, matrix_actions


@lru_cache(maxsize=None)
def _load_tables() -> dict:
    text = resources.files("cyberevo.controllers").joinpath("data/fsm_adversaries.json").read_text()
    return json.loads(text)


def fsm_table(side: str) -> dict:
    tables = _load_tables()
    if side not in ("red", "blue"):
        raise ControllerError(f"no fixed adversary for side {side!r}")
    return tables[side]


def load_fsm_adversary(side: str) -> MatrixController:
    """Build the hand-designed adversary controller for one side.

    The data file names its own column order; rows are reindexed into
    the shared matrix-controller action layout here.
    """
    table = fsm_table(side)
    columns = tuple(table["actions"])
    layout = matrix_actions(side)
    if sorted(columns) != sorted(layout):
        raise ControllerError(f"{side} adversary columns are not the matrix actions")
    if tuple(table["priority"]) != state_priority(side):
        raise ControllerError(f"{side} adversary state order differs from the classifier")
    index = {action: i for i, action in enumerate(columns)}
    rows = {
        state: [row[index[action]] for action in layout]
        for state, row in table["rows"].items()
    }
    return MatrixController(side, rows)
