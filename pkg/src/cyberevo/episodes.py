"""Run full scenario episodes with controller teams on both sides.

A team is a sequence of controllers indexed by agent slot.  A length-1
team is broadcast: every agent of that side shares the single
controller.  Target heuristics returned by controllers are resolved
here — host-targeted actions draw from the agent's ordered known-host
list, zone-targeted actions from its candidate zones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .controllers.base import Controller
from .controllers.rules import resolve_target
from .scenario.actions import TARGET_KINDS, TARGET_HOST, TARGET_NONE, TARGET_ZONE
from .scenario.config import ScenarioConfig
from .scenario.engine import BLUE_AGENT_ZONES, AgentContext, ScenarioSim
from .seeds import STREAM_CONTROLLER, spawn_generator

BLUE_AGENT_ORDER = tuple(name for name, _ in BLUE_AGENT_ZONES)
_BLUE_SLOTS = {name: i for i, name in enumerate(BLUE_AGENT_ORDER)}

Team = Sequence[Controller]


def agent_slot(name: str) -> int:
    """Slot index of an agent name on its own side."""
    if name in _BLUE_SLOTS:
        return _BLUE_SLOTS[name]
    return int(name.rsplit("_", 1)[1])


def controller_for(team: Team, name: str) -> Controller:
    if len(team) == 1:
        return team[0]
    return team[agent_slot(name)]


# Session-bound red actions draw their targets from the matching
# session list rather than everything the agent knows about; exploits
# aim at known hosts not yet owned. The chosen heuristic still picks
# within the list, which stays in discovery order.
_RED_CANDIDATES = {
    "PrivilegeEscalate": "user_hosts",
    "Impact": "root_hosts",
    "DegradeServices": "root_hosts",
    "ExploitRemoteService": "fresh_hosts",
}


def resolve_heuristic_target(
    action: str,
    heuristic: str,
    context: AgentContext,
    rng: np.random.Generator,
) -> Optional[str]:
    """Turn a (action, heuristic) decision into a concrete target."""
    kind = TARGET_KINDS[action]
    if kind == TARGET_NONE:
        return None
    if kind == TARGET_ZONE:
        return resolve_target(heuristic, context.candidate_zones, rng)
    assert kind == TARGET_HOST
    source = _RED_CANDIDATES.get(action)
    if source is not None and context.side == "red":
        return resolve_target(heuristic, getattr(context, source), rng)
    return resolve_target(heuristic, context.known_hosts, rng)


@dataclass(frozen=True)
class EpisodeResult:
    """Totals and per-step blue rewards for one finished episode."""

    blue_total: float
    red_total: float
    steps: int
    blue_rewards: tuple[float, ...]


def run_episode(
    config: ScenarioConfig,
    seed: int,
    blue_team: Team,
    red_team: Team,
    steps: Optional[int] = None,
) -> EpisodeResult:
    """Simulate one episode and return the summed zero-sum rewards."""
    sim = ScenarioSim(config, seed)
    rng = spawn_generator(seed, STREAM_CONTROLLER)
    observations = sim.initial_observations()
    horizon = config.steps if steps is None else min(steps, config.steps)
    blue_rewards: list[float] = []
    for _ in range(horizon):
        submissions: dict[str, tuple[str, Optional[str]]] = {}
        for name in sim.idle_agent_names():
            team = blue_team if sim.side_of(name) == "blue" else red_team
            controller = controller_for(team, name)
            context = sim.agent_context(name)
            action, heuristic = controller.decide(observations[name], context, rng)
            target = resolve_heuristic_target(action, heuristic, context, rng)
            submissions[name] = (action, target)
        result = sim.step(submissions)
        observations = result.observations
        blue_rewards.append(result.blue_reward)
    total = float(sum(blue_rewards))
    return EpisodeResult(
        blue_total=total,
        red_total=-total,
        steps=horizon,
        blue_rewards=tuple(blue_rewards),
    )
