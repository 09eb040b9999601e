"""Episode runner: team broadcasting, target resolution, reproducibility."""

from __future__ import annotations

import numpy as np
import pytest

from cyberevo.controllers.base import (
    FIRST_TARGET,
    LAST_TARGET,
    RANDOM_TARGET,
    FixedActionController,
    SleepController,
)
from cyberevo.controllers.fsm import load_fsm_adversary
from cyberevo.episodes import (
    BLUE_AGENT_ORDER,
    agent_slot,
    controller_for,
    resolve_heuristic_target,
    run_episode,
)
from cyberevo.scenario.config import ScenarioConfig
from cyberevo.scenario.engine import AgentContext
from cyberevo.scenario.topology import TopologyBounds

CONFIG = ScenarioConfig(
    steps=30,
    phase_boundaries=(10, 20),
    bounds=TopologyBounds(servers=(1, 2), user_hosts=(3, 4), services=(1, 2)),
)


def sleep_teams():
    return [SleepController("blue")], [SleepController("red")]


# ---------------------------------------------------------------------------
# slots and broadcasting


def test_agent_slots_follow_side_order():
    assert BLUE_AGENT_ORDER == (
        "blue_restricted_a",
        "blue_operational_a",
        "blue_restricted_b",
        "blue_operational_b",
        "blue_hq",
    )
    for i, name in enumerate(BLUE_AGENT_ORDER):
        assert agent_slot(name) == i
    assert agent_slot("red_0") == 0
    assert agent_slot("red_4") == 4


def test_singleton_team_is_broadcast():
    shared = SleepController("blue")
    team = [shared]
    assert controller_for(team, "blue_hq") is shared
    assert controller_for(team, "blue_operational_b") is shared
    many = [FixedActionController("blue", "Monitor") for _ in range(5)]
    assert controller_for(many, "blue_restricted_a") is many[0]
    assert controller_for(many, "blue_hq") is many[4]


# ---------------------------------------------------------------------------
# target resolution


def ctx(**overrides) -> AgentContext:
    base = dict(
        name="red_0",
        side="red",
        zones=("contractor_uav",),
        counters={},
        known_hosts=["h1", "h2", "h3"],
        user_hosts=("u1",),
        root_hosts=("r1", "r2"),
        fresh_hosts=("f1",),
        candidate_zones=["z1", "z2"],
    )
    base.update(overrides)
    return AgentContext(**base)


def test_resolution_is_action_aware_for_red():
    rng = np.random.default_rng(0)
    context = ctx()
    assert resolve_heuristic_target("Sleep", RANDOM_TARGET, context, rng) is None
    assert resolve_heuristic_target("Monitor", RANDOM_TARGET, context, rng) is None
    assert resolve_heuristic_target(
        "DiscoverRemoteSystems", FIRST_TARGET, context, rng) == "z1"
    assert resolve_heuristic_target(
        "PrivilegeEscalate", FIRST_TARGET, context, rng) == "u1"
    assert resolve_heuristic_target("Impact", LAST_TARGET, context, rng) == "r2"
    assert resolve_heuristic_target(
        "DegradeServices", FIRST_TARGET, context, rng) == "r1"
    assert resolve_heuristic_target(
        "ExploitRemoteService", LAST_TARGET, context, rng) == "f1"
    # actions without a session requirement draw from everything known
    assert resolve_heuristic_target(
        "AggressiveServiceDiscovery", FIRST_TARGET, context, rng) == "h1"
    assert resolve_heuristic_target(
        "DiscoverDeception", LAST_TARGET, context, rng) == "h3"


def test_resolution_returns_none_when_no_candidate_exists():
    rng = np.random.default_rng(0)
    context = ctx(root_hosts=(), user_hosts=(), fresh_hosts=())
    assert resolve_heuristic_target("Impact", FIRST_TARGET, context, rng) is None
    assert resolve_heuristic_target("PrivilegeEscalate", LAST_TARGET, context, rng) is None


def test_blue_host_actions_use_known_hosts_unfiltered():
    rng = np.random.default_rng(0)
    context = ctx(name="blue_hq", side="blue", known_hosts=["a", "b"])
    assert resolve_heuristic_target("Restore", FIRST_TARGET, context, rng) == "a"
    assert resolve_heuristic_target("Analyse", LAST_TARGET, context, rng) == "b"
    assert resolve_heuristic_target("BlockTrafficZone", FIRST_TARGET, context, rng) == "z1"


# ---------------------------------------------------------------------------
# whole episodes


def test_sleep_vs_sleep_scores_zero():
    blue, red = sleep_teams()
    result = run_episode(CONFIG, seed=7, blue_team=blue, red_team=red)
    assert result.blue_total == 0.0
    assert result.red_total == 0.0
    assert result.steps == CONFIG.steps
    assert result.blue_rewards == (0.0,) * CONFIG.steps


def test_same_seed_same_episode():
    adversary = [load_fsm_adversary("red")]
    blue = [SleepController("blue")]
    a = run_episode(CONFIG, seed=11, blue_team=blue, red_team=adversary)
    b = run_episode(CONFIG, seed=11, blue_team=blue, red_team=adversary)
    assert a.blue_rewards == b.blue_rewards
    c = run_episode(CONFIG, seed=12, blue_team=blue, red_team=adversary)
    assert a.blue_rewards != c.blue_rewards  # different world, different story


def test_rewards_are_zero_sum_and_red_preys_on_sleep():
    adversary = [load_fsm_adversary("red")]
    blue = [SleepController("blue")]
    result = run_episode(CONFIG, seed=13, blue_team=blue, red_team=adversary)
    assert result.blue_total == -result.red_total
    assert result.blue_total < 0.0  # an unopposed attacker does real damage


def test_step_cap_truncates_the_episode():
    blue, red = sleep_teams()
    result = run_episode(CONFIG, seed=5, blue_team=blue, red_team=red, steps=4)
    assert result.steps == 4
    assert len(result.blue_rewards) == 4
    longer = run_episode(CONFIG, seed=5, blue_team=blue, red_team=red, steps=99)
    assert longer.steps == CONFIG.steps  # capped at the scenario horizon


def test_full_default_scenario_runs_both_fsm_teams():
    config = ScenarioConfig()
    assert config.steps == 75
    result = run_episode(
        config, seed=3,
        blue_team=[load_fsm_adversary("blue")],
        red_team=[load_fsm_adversary("red")],
    )
    assert result.steps == 75
    assert result.blue_total == -result.red_total
