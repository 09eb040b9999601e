"""Rule controllers: interpret decision-tree programs over observations.

A rule controller owns an abstract syntax tree of ``if``/assignment
statements.  Each decision evaluates every statement top to bottom; the
last executed assignment to the action (and, when present, to the
target heuristic) wins.  Unassigned slots fall back to Sleep and the
controller's default heuristic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from ..errors import ControllerError
from ..grammar.ast import (
    ActionAssign,
    Condition,
    IfStatement,
    ObsTest,
    RuleAst,
    Statement,
    SuccessTest,
    TargetAssign,
)
from ..grammar.model import Grammar
from ..scenario.actions import is_legal
from ..scenario.observations import Observation
from .base import FIRST_TARGET, LAST_TARGET, RANDOM_TARGET, TARGET_HEURISTICS

DEFAULT_ACTION = "Sleep"


def _sum_field(observation: Observation, name: str) -> int:
    return sum(getattr(host, name) for host in observation.hosts.values())


OBSERVATION_FUNCTIONS: dict[str, Callable[[Observation, str], int]] = {
    "connections": lambda obs, agent: _sum_field(obs, "interfaces"),
    "files_user": lambda obs, agent: _sum_field(obs, "files_user"),
    "files_root": lambda obs, agent: _sum_field(obs, "files_root"),
    "n_servers": lambda obs, agent: _sum_field(obs, "server"),
    "root_access_levels": lambda obs, agent: _sum_field(obs, "root"),
}


def observation_fn(name: str, observation: Observation, agent_name: str = "") -> int:
    """Evaluate a named observation function to a nonnegative count."""
    try:
        fn = OBSERVATION_FUNCTIONS[name]
    except KeyError as exc:
        raise ControllerError(f"unknown observation function {name!r}") from exc
    return fn(observation, agent_name)


def resolve_target(
    heuristic: str, hosts: Sequence[str], rng: np.random.Generator
) -> Optional[str]:
    """Pick a concrete target from an ordered candidate list.

    ``first_target`` is the oldest entry, ``last_target`` the newest;
    an empty candidate list resolves to None.
    """
    if heuristic not in TARGET_HEURISTICS:
        raise ControllerError(f"unknown target heuristic {heuristic!r}")
    if not hosts:
        return None
    if heuristic == FIRST_TARGET:
        return hosts[0]
    if heuristic == LAST_TARGET:
        return hosts[-1]
    return hosts[int(rng.integers(0, len(hosts)))]


def _eval_operator(op, observation: Observation, agent_name: str) -> bool:
    if isinstance(op, SuccessTest):
        return observation.success == op.literal
    value = observation_fn(op.fn, observation, agent_name)
    if op.op == ">":
        return value > op.constant
    if op.op == "<":
        return value < op.constant
    return value == op.constant


def _eval_condition(cond: Condition, observation: Observation, agent_name: str) -> bool:
    left = _eval_operator(cond.left, observation, agent_name)
    if cond.kind == "single":
        return left
    if cond.kind == "and":
        return left and _eval_operator(cond.right, observation, agent_name)
    return left or _eval_operator(cond.right, observation, agent_name)


def _validate_statements(
    statements: Sequence[Statement], side: str, label: str
) -> None:
    stack = list(statements)
    while stack:
        node = stack.pop()
        if isinstance(node, IfStatement):
            for op in (node.condition.left, node.condition.right):
                if isinstance(op, ObsTest) and op.fn not in OBSERVATION_FUNCTIONS:
                    raise ControllerError(
                        f"{label}: unknown observation function {op.fn!r}"
                    )
            stack.append(node.body)
        elif isinstance(node, ActionAssign):
            if not is_legal(side, node.action):
                raise ControllerError(
                    f"{label}: action {node.action!r} is not legal for side {side!r}"
                )
        elif isinstance(node, TargetAssign):
            if node.heuristic not in TARGET_HEURISTICS:
                raise ControllerError(
                    f"{label}: unknown target heuristic {node.heuristic!r}"
                )
        else:
            raise ControllerError(f"{label}: unsupported statement {node!r}")


@dataclass
class RuleController:
    """Decision-tree controller for one agent slot."""

    ast: RuleAst
    side: str
    default_heuristic: str = RANDOM_TARGET
    grammar: Optional[Grammar] = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.side not in ("red", "blue"):
            raise ControllerError(f"side must be 'red' or 'blue', got {self.side!r}")
        if self.default_heuristic not in TARGET_HEURISTICS:
            raise ControllerError(
                f"unknown default heuristic {self.default_heuristic!r}"
            )
        _validate_statements(self.ast.action_statements, self.side, "action section")
        _validate_statements(self.ast.target_statements, self.side, "target section")

    def decide(
        self, observation: Observation, context, rng: np.random.Generator
    ) -> tuple[str, str]:
        agent_name = getattr(context, "name", "") if context is not None else ""
        action = DEFAULT_ACTION
        heuristic = self.default_heuristic
        for statement in _walk_fired(self.ast.action_statements, observation, agent_name):
            if isinstance(statement, ActionAssign):
                action = statement.action
            elif isinstance(statement, TargetAssign):
                heuristic = statement.heuristic
        for statement in _walk_fired(self.ast.target_statements, observation, agent_name):
            if isinstance(statement, TargetAssign):
                heuristic = statement.heuristic
            elif isinstance(statement, ActionAssign):
                action = statement.action
        return action, heuristic


def _walk_fired(
    statements: Sequence[Statement], observation: Observation, agent_name: str
):
    """Yield executed leaf assignments in program order."""
    for statement in statements:
        node = statement
        while isinstance(node, IfStatement):
            if not _eval_condition(node.condition, observation, agent_name):
                node = None
                break
            node = node.body
        if node is not None:
            yield node


def eval_rules(
    controller: RuleController,
    observation: Observation,
    agent_name: str,
    known_hosts: Sequence[str],
    rng: np.random.Generator,
) -> tuple[str, Optional[str]]:
    """Run one decision and resolve the heuristic against a host list."""
    action, heuristic = controller.decide(
        observation, _NamedContext(agent_name), rng
    )
    return action, resolve_target(heuristic, known_hosts, rng)


@dataclass(frozen=True)
class _NamedContext:
    name: str
