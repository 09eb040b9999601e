"""Per-agent observation records.

Observations are flat integer counters per host plus a success flag for
the agent's most recently completed action.  Red agents only see hosts
they have discovered; blue observations cover every host in the network.
"""

from __future__ import annotations

from dataclasses import dataclass, field

TRUE = "TRUE"
FALSE = "FALSE"
UNKNOWN = "UNKNOWN"
SUCCESS_VALUES = (TRUE, FALSE, UNKNOWN)


@dataclass(frozen=True, slots=True)
class HostObservation:
    """Counters an agent holds about one host."""

    interfaces: int = 0
    sessions: int = 0
    users: int = 0
    files_user: int = 0
    files_root: int = 0
    processes: int = 0
    server: int = 0
    root: int = 0


EMPTY_HOST = HostObservation()


@dataclass(slots=True)
class Observation:
    """What one agent sees after a step.

    ``hosts`` may be shared between agents of the same team; treat it as
    read-only.  ``green_failures`` counts green failure events inside
    the observing agent's own zones this step.
    """

    success: str = UNKNOWN
    hosts: dict[str, HostObservation] = field(default_factory=dict)
    green_failures: int = 0
