"""Step-based simulation of the four-network defense scenario.

One `ScenarioSim` owns the full network state and advances it one step
at a time.  Controllers never touch the state directly: they receive an
`Observation` plus an `AgentContext` and answer with an action name and
a target.  Everything stochastic flows through the episode generator,
so identical seeds replay identical trajectories.

Step order is fixed for determinism: submissions are enqueued, pending
actions tick down, blue completions apply before red completions, the
red team's automatic spawns roll, green users act, rewards are scored
and observations are rebuilt.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import SimulationFault
from ..seeds import STREAM_TOPOLOGY, derive_seed, spawn_generator
from . import actions as act
from .config import ScenarioConfig
from .observations import FALSE, TRUE, UNKNOWN, EMPTY_HOST, HostObservation, Observation
from .rewards import (
    ACCESS_SERVICE_FAILS,
    LOCAL_WORK_FAILS,
    RED_IMPACT_ACCESS,
    StepEvent,
    phase_of,
    reward_for,
)
from .topology import HOST_ZONES, INTERNET, ZONES, Topology, generate_topology, zone_reachable

NO_COMPROMISE = 0
USER_LEVEL = 1
ROOT_LEVEL = 2

DETECT_SCAN = "scan"
DETECT_EXPLOIT = "exploit"
DETECT_DECOY = "decoy"

BLUE_AGENT_ZONES = (
    ("blue_restricted_a", ("restricted_zone_a",)),
    ("blue_operational_a", ("operational_zone_a",)),
    ("blue_restricted_b", ("restricted_zone_b",)),
    ("blue_operational_b", ("operational_zone_b",)),
    ("blue_hq", ("public_access_zone", "admin_zone", "office_network")),
)


class HostRuntime:
    """Mutable per-host state layered over the static topology."""

    __slots__ = (
        "degraded", "decoy", "restoring", "red_level",
        "flagged_step", "confirmed_step",
        "files_user_evidence", "files_root_evidence", "sessions_evidence",
    )

    def __init__(self):
        self.degraded = False
        self.decoy = False
        self.restoring = False
        self.red_level = NO_COMPROMISE
        self.flagged_step: int | None = None
        self.confirmed_step: int | None = None
        self.files_user_evidence = 0
        self.files_root_evidence = 0
        self.sessions_evidence = 0

    def clear_evidence(self):
        self.flagged_step = None
        self.confirmed_step = None
        self.files_user_evidence = 0
        self.files_root_evidence = 0
        self.sessions_evidence = 0


class RedAgent:
    __slots__ = (
        "name", "slot", "zone", "entry_host", "anchor", "sessions",
        "known", "known_set", "scanned", "decoys_known",
        "pending", "last_success", "last_discovery_step",
    )

    def __init__(self, name: str, slot: int, zone: str, entry_host: str, anchor: bool):
        self.name = name
        self.slot = slot
        self.zone = zone
        self.entry_host = entry_host
        self.anchor = anchor
        self.sessions: dict[str, int] = {entry_host: USER_LEVEL}
        self.known: list[str] = [entry_host]
        self.known_set = {entry_host}
        self.scanned: set[str] = set()
        self.decoys_known: set[str] = set()
        self.pending: tuple[str, str | None, int] | None = None
        self.last_success = UNKNOWN
        self.last_discovery_step = -1

    def learn(self, host_id: str) -> bool:
        if host_id in self.known_set:
            return False
        self.known.append(host_id)
        self.known_set.add(host_id)
        return True


class BlueAgent:
    __slots__ = ("name", "zones", "home_host", "zone_hosts", "pending",
                 "last_success", "monitor_step", "analysed_clean_step")

    def __init__(self, name: str, zones: tuple[str, ...], home_host: str, zone_hosts: list[str]):
        self.name = name
        self.zones = zones
        self.home_host = home_host
        self.zone_hosts = zone_hosts
        self.pending: tuple[str, str | None, int] | None = None
        self.last_success = UNKNOWN
        self.monitor_step = -1
        self.analysed_clean_step = -1


@dataclass
class AgentContext:
    """Decision context the episode runner hands to a controller."""

    name: str
    side: str
    zones: tuple[str, ...]
    known_hosts: list[str]
    candidate_zones: list[str]
    counters: dict[str, int] = field(default_factory=dict)
    # Red-only action-shaped candidate lists, all in known-host order:
    # hosts where the agent holds a user / root session, and known hosts
    # it holds no session on. Session-bound actions draw targets from
    # these instead of the full known list.
    user_hosts: tuple[str, ...] = ()
    root_hosts: tuple[str, ...] = ()
    fresh_hosts: tuple[str, ...] = ()


@dataclass
class StepResult:
    events: list[StepEvent]
    observations: dict[str, Observation]
    blue_reward: float
    red_reward: float


class ScenarioSim:
    """A single episode's network state and step function."""

    def __init__(self, config: ScenarioConfig, seed: int, topology: Topology | None = None):
        self.config = config
        self.seed = seed
        self.topology = topology or generate_topology(derive_seed(seed, STREAM_TOPOLOGY), config.bounds)
        self.rng: np.random.Generator = spawn_generator(seed)
        self.step_index = 0
        self.hosts: dict[str, HostRuntime] = {h: HostRuntime() for h in self.topology.hosts}
        self.blocked: set[tuple[str, str]] = set()
        self._reach = zone_reachable(self.blocked)
        self._reach_dirty = False
        self.red_agents: list[RedAgent | None] = [None] * config.red_slots
        self.blue_agents: dict[str, BlueAgent] = {}
        self._detections: list[tuple[str, str]] = []
        self._zone_failures: dict[str, int] = {}
        self._last_applied_step = -1
        self.cumulative_blue = 0.0
        self.cumulative_red = 0.0
        self._green_hosts = [h for h in self.topology.hosts if not self.topology.hosts[h].server]
        self._service_hosts = list(self.topology.hosts)
        self._service_cumsum = np.cumsum([self.topology.hosts[h].services for h in self._service_hosts])
        self._static_blue_hosts = {
            h: (HostObservation(server=1) if self.topology.hosts[h].server else EMPTY_HOST)
            for h in self.topology.hosts
        }
        self._spawn_initial_agents()

    # ------------------------------------------------------------------
    # setup

    def _spawn_initial_agents(self):
        contractor_hosts = self.topology.hosts_by_zone["contractor_uav"]
        entry = contractor_hosts[int(self.rng.integers(len(contractor_hosts)))]
        self.red_agents[0] = RedAgent("red_0", 0, "contractor_uav", entry, anchor=True)
        self.hosts[entry].red_level = USER_LEVEL
        for name, zones in BLUE_AGENT_ZONES:
            home = self.topology.servers_in(zones[0])[0]
            zone_hosts = [h for z in zones for h in self.topology.hosts_by_zone[z]]
            self.blue_agents[name] = BlueAgent(name, zones, home, zone_hosts)

    # ------------------------------------------------------------------
    # queries used by the episode runner

    def agent_names(self) -> list[str]:
        names = list(self.blue_agents)
        names.extend(a.name for a in self.red_agents if a is not None)
        return names

    def idle_agent_names(self) -> list[str]:
        return [n for n in self.agent_names() if self._agent(n).pending is None]

    def side_of(self, name: str) -> str:
        return act.BLUE if name in self.blue_agents else act.RED

    def _agent(self, name: str):
        if name in self.blue_agents:
            return self.blue_agents[name]
        for agent in self.red_agents:
            if agent is not None and agent.name == name:
                return agent
        raise SimulationFault(f"unknown agent {name!r}")

    def _red_in_zone(self, zone: str) -> RedAgent | None:
        for agent in self.red_agents:
            if agent is not None and agent.zone == zone:
                return agent
        return None

    def _free_slot(self) -> int | None:
        for i, agent in enumerate(self.red_agents):
            if agent is None:
                return i
        return None

    def reachable(self, zone_a: str, zone_b: str) -> bool:
        if self._reach_dirty:
            self._reach = zone_reachable(self.blocked)
            self._reach_dirty = False
        if self._zone_pair(zone_a, zone_b) in self.blocked:
            return False
        return zone_b in self._reach[zone_a]

    # ------------------------------------------------------------------
    # the step function

    def step(self, agent_actions: dict[str, tuple[str, str | None]]) -> StepResult:
        """Advance the simulation by one step.

        ``agent_actions`` maps agent name to (action, resolved target).
        Busy agents may be omitted or submit Sleep; anything else is a
        controller bug and raises `SimulationFault`.
        """
        if self.step_index >= self.config.steps:
            raise SimulationFault(f"episode already ran its {self.config.steps} steps")
        events: list[StepEvent] = []
        self._detections = []
        self._zone_failures = {}

        ordered = [n for n in self.agent_names() if n in agent_actions]
        unknown = set(agent_actions) - set(self.agent_names())
        if unknown:
            raise SimulationFault(f"actions submitted for unknown agents {sorted(unknown)}")
        for name in ordered:
            self._submit(name, agent_actions[name])

        completions = self._tick_pending()
        for agent, action, target in completions:
            if isinstance(agent, BlueAgent):
                self._apply_blue(agent, action, target, events)
        for agent, action, target in completions:
            # A blue completion earlier in this step may have evicted the
            # red agent; its in-flight action dies with it.
            if isinstance(agent, RedAgent) and self.red_agents[agent.slot] is agent:
                self._apply_red(agent, action, target, events)

        self._roll_phishing()
        self._run_greens(events)

        phase = phase_of(self.step_index, self.config.phase_boundaries, self.config.steps)
        blue_reward, red_reward = reward_for(events, phase, self.config.reward_table)
        self.cumulative_blue += blue_reward
        self.cumulative_red += red_reward

        self._last_applied_step = self.step_index
        self.step_index += 1
        observations = self._build_observations()
        return StepResult(events, observations, blue_reward, red_reward)

    def _submit(self, name: str, submission: tuple[str, str | None]):
        action, target = submission
        agent = self._agent(name)
        side = self.side_of(name)
        if not act.is_legal(side, action):
            raise SimulationFault(f"{name} submitted illegal action {action!r} for side {side}")
        if agent.pending is not None:
            if action == "Sleep":
                return
            raise SimulationFault(f"{name} submitted {action} while busy")
        kind = act.TARGET_KINDS[action]
        if kind == act.TARGET_NONE:
            if target is not None:
                raise SimulationFault(f"{action} takes no target, got {target!r}")
        elif target is not None:
            if kind == act.TARGET_HOST and target not in self.topology.hosts:
                raise SimulationFault(f"{action} target {target!r} is not a host")
            if kind == act.TARGET_ZONE and target not in ZONES:
                raise SimulationFault(f"{action} target {target!r} is not a zone")
        if target is None and kind != act.TARGET_NONE:
            # An unresolvable target degrades the action to a one-step no-op.
            agent.pending = (action, None, 1)
        else:
            agent.pending = (action, target, self.config.duration_of(action))
            if action == "Restore":
                # The machine is offline for the whole reimaging window.
                self.hosts[target].restoring = True

    def _tick_pending(self):
        completions = []
        for name in self.agent_names():
            agent = self._agent(name)
            if agent.pending is None:
                continue
            action, target, remaining = agent.pending
            remaining -= 1
            if remaining > 0:
                agent.pending = (action, target, remaining)
            else:
                agent.pending = None
                completions.append((agent, action, target))
        return completions

    # ------------------------------------------------------------------
    # blue action semantics

    def _apply_blue(self, agent: BlueAgent, action: str, target: str | None, events: list[StepEvent]):
        if target is None and act.TARGET_KINDS[action] != act.TARGET_NONE:
            agent.last_success = FALSE
            return
        if action == "Restore":
            self.hosts[target].restoring = False
        handler = getattr(self, f"_blue_{action.lower()}", None)
        if handler is None:
            agent.last_success = TRUE if action == "Sleep" else FALSE
            return
        agent.last_success = TRUE if handler(agent, target, events) else FALSE

    def _blue_monitor(self, agent: BlueAgent, target, events) -> bool:
        agent.monitor_step = self.step_index
        return True

    def _blue_analyse(self, agent: BlueAgent, target, events) -> bool:
        if self.topology.hosts[target].zone not in agent.zones:
            return False
        host = self.hosts[target]
        if host.red_level >= USER_LEVEL:
            host.files_user_evidence = 1
            host.files_root_evidence = 1 if host.red_level == ROOT_LEVEL else 0
            host.sessions_evidence = sum(
                1 for a in self.red_agents if a is not None and target in a.sessions
            )
            host.confirmed_step = self.step_index
        else:
            host.clear_evidence()
            agent.analysed_clean_step = self.step_index
        return True

    def _blue_deploydecoy(self, agent: BlueAgent, target, events) -> bool:
        if self.topology.hosts[target].zone not in agent.zones:
            return False
        host = self.hosts[target]
        if host.decoy:
            return False
        host.decoy = True
        return True

    def _blue_remove(self, agent: BlueAgent, target, events) -> bool:
        if self.topology.hosts[target].zone not in agent.zones:
            return False
        host = self.hosts[target]
        removed = False
        for red in self.red_agents:
            if red is None or red.sessions.get(target) != USER_LEVEL:
                continue
            if red.anchor and target == red.entry_host:
                continue
            del red.sessions[target]
            removed = True
        self._recompute_level(target)
        self._deactivate_empty_agents()
        if self.hosts[target].red_level == NO_COMPROMISE:
            host.clear_evidence()
        return removed and self.hosts[target].red_level == NO_COMPROMISE

    def _blue_restore(self, agent: BlueAgent, target, events) -> bool:
        if self.topology.hosts[target].zone not in agent.zones:
            return False
        host = self.hosts[target]
        for red in self.red_agents:
            if red is None or target not in red.sessions:
                continue
            if red.anchor and target == red.entry_host:
                # The contractor foothold survives any cleanup.
                red.sessions[target] = USER_LEVEL
                continue
            del red.sessions[target]
        self._recompute_level(target)
        self._deactivate_empty_agents()
        host.degraded = False
        host.decoy = False
        host.restoring = False
        host.clear_evidence()
        return True

    def _blue_blocktrafficzone(self, agent: BlueAgent, target, events) -> bool:
        if target in agent.zones:
            return False
        pair = self._zone_pair(agent.zones[0], target)
        if pair in self.blocked:
            return False
        self.blocked.add(pair)
        self._reach_dirty = True
        return True

    def _blue_allowtrafficzone(self, agent: BlueAgent, target, events) -> bool:
        pair = self._zone_pair(agent.zones[0], target)
        if pair not in self.blocked:
            return False
        self.blocked.discard(pair)
        self._reach_dirty = True
        return True

    @staticmethod
    def _zone_pair(zone_a: str, zone_b: str) -> tuple[str, str]:
        return (zone_a, zone_b) if zone_a < zone_b else (zone_b, zone_a)

    # ------------------------------------------------------------------
    # red action semantics

    def _apply_red(self, agent: RedAgent, action: str, target: str | None, events: list[StepEvent]):
        if target is None and act.TARGET_KINDS[action] != act.TARGET_NONE:
            agent.last_success = FALSE
            return
        handler = getattr(self, f"_red_{action.lower()}", None)
        if handler is None:
            agent.last_success = TRUE if action == "Sleep" else FALSE
            return
        agent.last_success = TRUE if handler(agent, target, events) else FALSE

    def _red_discoverremotesystems(self, agent: RedAgent, target, events) -> bool:
        if not self.reachable(agent.zone, target):
            return False
        found = False
        for host_id in self.topology.hosts_by_zone[target]:
            found = agent.learn(host_id) or found
        if found:
            agent.last_discovery_step = self.step_index
        return True

    def _scan(self, agent: RedAgent, target: str, detect_p: float) -> bool:
        if target not in agent.known_set:
            return False
        if not self.reachable(agent.zone, self.topology.hosts[target].zone):
            return False
        if target not in agent.scanned:
            agent.scanned.add(target)
            agent.last_discovery_step = self.step_index
        if self.rng.random() < detect_p:
            self._record_detection(target, DETECT_SCAN)
        return True

    def _red_aggressiveservicediscovery(self, agent: RedAgent, target, events) -> bool:
        return self._scan(agent, target, self.config.scan_detect_aggressive_p)

    def _red_stealthservicediscovery(self, agent: RedAgent, target, events) -> bool:
        return self._scan(agent, target, self.config.scan_detect_stealth_p)

    def _red_exploitremoteservice(self, agent: RedAgent, target, events) -> bool:
        if target not in agent.known_set:
            return False
        target_zone = self.topology.hosts[target].zone
        if not self.reachable(agent.zone, target_zone):
            return False
        host = self.hosts[target]
        if host.decoy and self.rng.random() < self.config.decoy_trip_p:
            self._record_detection(target, DETECT_DECOY)
            return False
        p = self.config.exploit_scanned_p if target in agent.scanned else self.config.exploit_unscanned_p
        if self.rng.random() >= p:
            # A failed exploit is noisy and may be spotted.
            if self.rng.random() < self.config.scan_detect_aggressive_p:
                self._record_detection(target, DETECT_EXPLOIT)
            return False
        if self.rng.random() < self.config.scan_detect_stealth_p:
            self._record_detection(target, DETECT_EXPLOIT)
        if target_zone == agent.zone:
            agent.sessions[target] = max(agent.sessions.get(target, 0), USER_LEVEL)
            self._recompute_level(target)
            return True
        other = self._red_in_zone(target_zone)
        if other is not None:
            other.sessions[target] = max(other.sessions.get(target, 0), USER_LEVEL)
            other.learn(target)
            self._recompute_level(target)
            return True
        slot = self._free_slot()
        if slot is None:
            return False
        self._spawn_red(slot, target_zone, target)
        return True

    def _red_privilegeescalate(self, agent: RedAgent, target, events) -> bool:
        if agent.sessions.get(target) != USER_LEVEL:
            return False
        if self.rng.random() >= self.config.escalate_p:
            return False
        agent.sessions[target] = ROOT_LEVEL
        self._recompute_level(target)
        events.append(StepEvent(self.topology.reward_zone(self.topology.hosts[target].zone), RED_IMPACT_ACCESS))
        return True

    def _red_degradeservices(self, agent: RedAgent, target, events) -> bool:
        if agent.sessions.get(target) != ROOT_LEVEL:
            return False
        self.hosts[target].degraded = True
        return True

    def _red_discoverdeception(self, agent: RedAgent, target, events) -> bool:
        if target not in agent.known_set:
            return False
        if self.hosts[target].decoy:
            agent.decoys_known.add(target)
            return True
        return False

    def _red_impact(self, agent: RedAgent, target, events) -> bool:
        if agent.sessions.get(target) != ROOT_LEVEL:
            return False
        events.append(StepEvent(self.topology.reward_zone(self.topology.hosts[target].zone), RED_IMPACT_ACCESS))
        return True

    def _red_withdraw(self, agent: RedAgent, target, events) -> bool:
        if target not in agent.sessions:
            return False
        if agent.anchor and target == agent.entry_host:
            return False
        del agent.sessions[target]
        self._recompute_level(target)
        self._deactivate_empty_agents()
        return True

    # ------------------------------------------------------------------
    # background processes

    def _spawn_red(self, slot: int, zone: str, entry_host: str):
        agent = RedAgent(f"red_{slot}", slot, zone, entry_host, anchor=False)
        self.red_agents[slot] = agent
        self.hosts[entry_host].red_level = max(self.hosts[entry_host].red_level, USER_LEVEL)

    def _roll_phishing(self):
        for zone in HOST_ZONES:
            if self.rng.random() >= self.config.phishing_p:
                continue
            if self._red_in_zone(zone) is not None:
                continue
            slot = self._free_slot()
            if slot is None:
                continue
            users = [h for h in self.topology.hosts_by_zone[zone] if not self.topology.hosts[h].server]
            entry = users[int(self.rng.integers(len(users)))]
            self._spawn_red(slot, zone, entry)

    def _run_greens(self, events: list[StepEvent]):
        for host_id in self._green_hosts:
            action, target = green_policy(
                self.rng, host_id, self._service_hosts, self._service_cumsum,
                self.config.green_local_work_p,
            )
            if action == "LocalWork":
                host = self.hosts[host_id]
                if host.degraded or host.restoring:
                    self._green_failure(self.topology.hosts[host_id].zone, LOCAL_WORK_FAILS, events)
            else:
                self._green_access(host_id, target, events)

    def _green_access(self, green_host: str, target: str, events: list[StepEvent]):
        target_zone = self.topology.hosts[target].zone
        own_zone = self.topology.hosts[green_host].zone
        target_state = self.hosts[target]
        if not self.reachable(own_zone, target_zone) or target_state.degraded or target_state.restoring:
            # Failed service access is charged to the zone offering the service.
            self._green_failure(target_zone, ACCESS_SERVICE_FAILS, events)
            return
        if target_state.red_level >= USER_LEVEL and self.rng.random() < self.config.service_spawn_p:
            resident = self._red_in_zone(own_zone)
            if resident is not None:
                resident.sessions[green_host] = max(resident.sessions.get(green_host, 0), USER_LEVEL)
                resident.learn(green_host)
                self._recompute_level(green_host)
            else:
                slot = self._free_slot()
                if slot is not None:
                    self._spawn_red(slot, own_zone, green_host)

    def _green_failure(self, zone: str, kind: str, events: list[StepEvent]):
        events.append(StepEvent(self.topology.reward_zone(zone), kind))
        self._zone_failures[zone] = self._zone_failures.get(zone, 0) + 1

    # ------------------------------------------------------------------
    # shared bookkeeping

    def _recompute_level(self, host_id: str):
        level = NO_COMPROMISE
        for red in self.red_agents:
            if red is not None and host_id in red.sessions:
                level = max(level, red.sessions[host_id])
        self.hosts[host_id].red_level = level

    def _deactivate_empty_agents(self):
        for i, red in enumerate(self.red_agents):
            if red is not None and not red.anchor and not red.sessions:
                self.red_agents[i] = None

    def _record_detection(self, host_id: str, kind: str):
        self._detections.append((host_id, kind))
        zone = self.topology.hosts[host_id].zone
        if kind == DETECT_DECOY or self._zone_monitored(zone):
            self.hosts[host_id].flagged_step = self.step_index

    def _zone_monitored(self, zone: str) -> bool:
        for agent in self.blue_agents.values():
            if zone in agent.zones:
                return agent.monitor_step == self.step_index
        return False

    # ------------------------------------------------------------------
    # observations and contexts

    def _build_observations(self) -> dict[str, Observation]:
        blue_hosts = dict(self._static_blue_hosts)
        last = self._last_applied_step
        per_host_detections: dict[str, list[str]] = {}
        for host_id, kind in self._detections:
            zone = self.topology.hosts[host_id].zone
            if kind == DETECT_DECOY or self._zone_monitored_at(zone, last):
                per_host_detections.setdefault(host_id, []).append(kind)
        touched = set(per_host_detections)
        for host_id, runtime in self.hosts.items():
            if runtime.files_user_evidence or runtime.sessions_evidence:
                touched.add(host_id)
        for host_id in sorted(touched):
            runtime = self.hosts[host_id]
            kinds = per_host_detections.get(host_id, ())
            blue_hosts[host_id] = HostObservation(
                interfaces=sum(1 for k in kinds if k == DETECT_SCAN),
                sessions=runtime.sessions_evidence,
                users=0,
                files_user=runtime.files_user_evidence,
                files_root=runtime.files_root_evidence,
                processes=sum(1 for k in kinds if k != DETECT_SCAN),
                server=1 if self.topology.hosts[host_id].server else 0,
                root=0,
            )
        observations: dict[str, Observation] = {}
        for name, agent in self.blue_agents.items():
            failures = sum(self._zone_failures.get(z, 0) for z in agent.zones)
            observations[name] = Observation(agent.last_success, blue_hosts, failures)
        for red in self.red_agents:
            if red is None:
                continue
            hosts = {}
            for host_id in red.known:
                level = red.sessions.get(host_id, 0)
                hosts[host_id] = HostObservation(
                    interfaces=1,
                    sessions=1 if level else 0,
                    users=1 if level == USER_LEVEL else 0,
                    files_user=1 if level >= USER_LEVEL else 0,
                    files_root=1 if level == ROOT_LEVEL else 0,
                    processes=self.topology.hosts[host_id].services if host_id in red.scanned else 0,
                    server=1 if self.topology.hosts[host_id].server else 0,
                    root=1 if level == ROOT_LEVEL else 0,
                )
            observations[red.name] = Observation(red.last_success, hosts, 0)
        return observations

    def _zone_monitored_at(self, zone: str, step: int) -> bool:
        for agent in self.blue_agents.values():
            if zone in agent.zones:
                return agent.monitor_step == step
        return False

    def initial_observations(self) -> dict[str, Observation]:
        return self._build_observations()

    def agent_context(self, name: str) -> AgentContext:
        """Build the decision context for one agent at the current step."""
        last = self._last_applied_step
        agent = self._agent(name)
        if isinstance(agent, RedAgent):
            candidates = [z for z in ZONES if self.reachable(agent.zone, z)]
            non_entry_users = sum(
                1 for h, lvl in agent.sessions.items()
                if lvl == USER_LEVEL and not (h == agent.entry_host and agent.anchor)
            )
            counters = {
                "known_hosts": len(agent.known),
                "discovery_events": 1 if agent.last_discovery_step == last else 0,
                "services_discovered": len(agent.scanned),
                "user_sessions": non_entry_users,
                "root_sessions": sum(1 for lvl in agent.sessions.values() if lvl == ROOT_LEVEL),
            }
            return AgentContext(
                name, act.RED, (agent.zone,), list(agent.known), candidates, counters,
                user_hosts=tuple(
                    h for h in agent.known if agent.sessions.get(h) == USER_LEVEL
                ),
                root_hosts=tuple(
                    h for h in agent.known if agent.sessions.get(h) == ROOT_LEVEL
                ),
                fresh_hosts=tuple(h for h in agent.known if h not in agent.sessions),
            )
        flagged = [
            h for h in agent.zone_hosts
            if self.hosts[h].flagged_step is not None or self.hosts[h].confirmed_step is not None
        ]
        flagged.sort(key=lambda h: (
            self.hosts[h].flagged_step if self.hosts[h].flagged_step is not None
            else self.hosts[h].confirmed_step,
            agent.zone_hosts.index(h),
        ))
        known = flagged if flagged else list(agent.zone_hosts)
        candidates = [z for z in ZONES if z not in agent.zones]
        zone_suspicious = 0
        for host_id, kind in self._detections:
            zone = self.topology.hosts[host_id].zone
            if zone not in agent.zones:
                continue
            if kind == DETECT_DECOY or agent.monitor_step == last:
                zone_suspicious += 1
        counters = {
            "zone_suspicious": zone_suspicious,
            "zone_failures": sum(self._zone_failures.get(z, 0) for z in agent.zones),
            "flagged_suspicious": sum(
                1 for h in agent.zone_hosts
                if self.hosts[h].flagged_step is not None and self.hosts[h].confirmed_step is None
            ),
            "confirmed_compromised": sum(
                1 for h in agent.zone_hosts if self.hosts[h].confirmed_step is not None
            ),
            "analysed_clean": 1 if agent.analysed_clean_step == last else 0,
        }
        return AgentContext(name, act.BLUE, agent.zones, known, candidates, counters)


def green_policy(
    rng: np.random.Generator,
    green_host: str,
    service_hosts: list[str],
    service_cumsum: np.ndarray,
    p_local_work: float = 0.5,
) -> tuple[str, str | None]:
    """Draw one green user's action for the step.

    Greens do local work or reach out to a service picked uniformly over
    every service offered by other hosts (local zone or remote).
    """
    if rng.random() < p_local_work:
        return "LocalWork", None
    total = int(service_cumsum[-1])
    while True:
        draw = int(rng.integers(total))
        idx = int(np.searchsorted(service_cumsum, draw, side="right"))
        target = service_hosts[idx]
        if target != green_host:
            return "AccessService", target
