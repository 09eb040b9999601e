"""Random network topology generation.

The scenario spans four networks joined through the internet: two
deployed networks (a restricted plus an operational security zone each),
a headquarters network with three security zones and an undefended
contractor network hosting UAV control services.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ScenarioConfigError
from ..seeds import spawn_generator

INTERNET = "internet"

# (zone id, network, reward zone label)
ZONE_TABLE = (
    ("restricted_zone_a", "deployed_a", "Restricted Zone A"),
    ("operational_zone_a", "deployed_a", "Operational Zone A"),
    ("restricted_zone_b", "deployed_b", "Restricted Zone B"),
    ("operational_zone_b", "deployed_b", "Operational Zone B"),
    ("public_access_zone", "hq", "HQ Network"),
    ("admin_zone", "hq", "HQ Network"),
    ("office_network", "hq", "HQ Network"),
    ("contractor_uav", "contractor", "Contractor Network"),
    (INTERNET, "internet", "Internet"),
)

ZONES = tuple(z for z, _, _ in ZONE_TABLE)
HOST_ZONES = tuple(z for z in ZONES if z != INTERNET)
NETWORKS = ("deployed_a", "deployed_b", "hq", "contractor")
REWARD_ZONE_OF = {z: label for z, _, label in ZONE_TABLE}

# Restricted zones front their operational zones; HQ zones are fully
# meshed behind the public access zone; everything external rides the
# internet.
ADJACENCY = {
    INTERNET: ("restricted_zone_a", "restricted_zone_b", "public_access_zone", "contractor_uav"),
    "restricted_zone_a": (INTERNET, "operational_zone_a"),
    "operational_zone_a": ("restricted_zone_a",),
    "restricted_zone_b": (INTERNET, "operational_zone_b"),
    "operational_zone_b": ("restricted_zone_b",),
    "public_access_zone": (INTERNET, "admin_zone", "office_network"),
    "admin_zone": ("public_access_zone", "office_network"),
    "office_network": ("public_access_zone", "admin_zone"),
    "contractor_uav": (INTERNET,),
}


@dataclass(frozen=True)
class TopologyBounds:
    """Per-zone sizing ranges, inclusive."""

    servers: tuple[int, int] = (1, 6)
    user_hosts: tuple[int, int] = (3, 10)
    services: tuple[int, int] = (1, 5)


@dataclass(frozen=True)
class Host:
    id: str
    zone: str
    server: bool
    services: int


@dataclass
class Topology:
    seed: int
    hosts: dict[str, Host]
    hosts_by_zone: dict[str, list[str]] = field(init=False)

    def __post_init__(self):
        by_zone: dict[str, list[str]] = {zone: [] for zone in ZONES}
        for host in self.hosts.values():
            by_zone[host.zone].append(host.id)
        self.hosts_by_zone = by_zone

    @property
    def networks(self) -> tuple[str, ...]:
        return NETWORKS

    @property
    def zones(self) -> tuple[str, ...]:
        return ZONES

    def reward_zone(self, zone: str) -> str:
        return REWARD_ZONE_OF[zone]

    def user_hosts(self) -> list[str]:
        return [h.id for h in self.hosts.values() if not h.server]

    def servers_in(self, zone: str) -> list[str]:
        return [h for h in self.hosts_by_zone[zone] if self.hosts[h].server]

    def total_services(self) -> int:
        return sum(h.services for h in self.hosts.values())

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "hosts": {
                h.id: {"zone": h.zone, "server": h.server, "services": h.services}
                for h in self.hosts.values()
            },
        }

    def validate(self, bounds: TopologyBounds) -> None:
        """Raise if the topology violates the documented shape."""
        if not self.hosts_by_zone[INTERNET] == []:
            raise ScenarioConfigError("internet zone must not contain hosts")
        for zone in HOST_ZONES:
            servers = len(self.servers_in(zone))
            users = len(self.hosts_by_zone[zone]) - servers
            if not bounds.servers[0] <= servers <= bounds.servers[1]:
                raise ScenarioConfigError(f"zone {zone} has {servers} servers, outside {bounds.servers}")
            if not bounds.user_hosts[0] <= users <= bounds.user_hosts[1]:
                raise ScenarioConfigError(f"zone {zone} has {users} user hosts, outside {bounds.user_hosts}")
        for host in self.hosts.values():
            if not bounds.services[0] <= host.services <= bounds.services[1]:
                raise ScenarioConfigError(f"host {host.id} has {host.services} services, outside {bounds.services}")


def generate_topology(seed: int, bounds: TopologyBounds = TopologyBounds()) -> Topology:
    """Generate a random topology; identical seeds give identical results."""
    rng = spawn_generator(seed)
    hosts: dict[str, Host] = {}
    for zone in HOST_ZONES:
        n_servers = int(rng.integers(bounds.servers[0], bounds.servers[1] + 1))
        n_users = int(rng.integers(bounds.user_hosts[0], bounds.user_hosts[1] + 1))
        for i in range(n_servers):
            hid = f"{zone}_srv{i}"
            hosts[hid] = Host(hid, zone, True, int(rng.integers(bounds.services[0], bounds.services[1] + 1)))
        for i in range(n_users):
            hid = f"{zone}_usr{i}"
            hosts[hid] = Host(hid, zone, False, int(rng.integers(bounds.services[0], bounds.services[1] + 1)))
    return Topology(seed=seed, hosts=hosts)


def zone_reachable(blocked: set[tuple[str, str]]) -> dict[str, frozenset[str]]:
    """Reachability over the zone graph with blocked edges removed.

    Returns, for every zone, the set of zones it can route to (itself
    included).  A blocked pair cuts the direct edge in both directions.
    """
    reach: dict[str, frozenset[str]] = {}
    for start in ZONES:
        seen = {start}
        frontier = [start]
        while frontier:
            zone = frontier.pop()
            for nxt in ADJACENCY[zone]:
                pair = (zone, nxt) if zone < nxt else (nxt, zone)
                if pair in blocked or nxt in seen:
                    continue
                seen.add(nxt)
                frontier.append(nxt)
        reach[start] = frozenset(seen)
    return reach
