"""Controller interface shared by matrix and rule controllers.

A controller answers one question per decision: which action, and which
target heuristic.  The episode runner resolves the heuristic into a
concrete host or zone according to the action's target kind.
"""

from __future__ import annotations

from typing import Protocol, runtime_checkable

import numpy as np

from ..scenario.engine import AgentContext
from ..scenario.observations import Observation

RANDOM_TARGET = "random_target"
FIRST_TARGET = "first_target"
LAST_TARGET = "last_target"
TARGET_HEURISTICS = (RANDOM_TARGET, FIRST_TARGET, LAST_TARGET)


@runtime_checkable
class Controller(Protocol):
    side: str

    def decide(
        self, observation: Observation, context: AgentContext, rng: np.random.Generator
    ) -> tuple[str, str]:
        """Return (action name, target heuristic name)."""
        ...


class SleepController:
    """Does nothing, forever.  Useful as a neutral adversary and anchor."""

    def __init__(self, side: str):
        self.side = side

    def decide(self, observation, context, rng) -> tuple[str, str]:
        return "Sleep", RANDOM_TARGET


class FixedActionController:
    """Repeats one action with one heuristic; handy in tests."""

    def __init__(self, side: str, action: str, heuristic: str = RANDOM_TARGET):
        self.side = side
        self.action = action
        self.heuristic = heuristic

    def decide(self, observation, context, rng) -> tuple[str, str]:
        return self.action, self.heuristic
