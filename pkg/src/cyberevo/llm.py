"""Program mutation through a language-model completion service.

The mutation operator works on rendered controller code, not on the
genome: the program, the grammar it must respect, and an instruction
block are packed into one prompt; the completion is parsed back through
the grammar.  Anything that fails — transport errors, refusals,
ungrammatical code — turns into a flagged invalid individual rather
than an exception, and every call lands in `LlmStats`.

Besides the HTTP client there are deterministic in-process clients for
tests and offline runs.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from typing import Optional, Protocol, Sequence

import numpy as np

from .episodes import Team
from .errors import ProgramParseError
from .grammar.ast import RuleAst
from .grammar.mapping import build_ast
from .grammar.model import Grammar
from .grammar.program import parse_program, render_program

_FENCE = re.compile(r"```(?:[A-Za-z0-9_+-]*\n)?(.*?)```", re.DOTALL)

GRAMMAR_HEADER = "The grammar:"
PROGRAM_HEADER = "The current program:"


@dataclass(frozen=True)
class PromptTemplate:
    """Pieces of the mutation prompt surrounding grammar and code."""

    persona: str = (
        "You are improving the decision policy of an autonomous network "
        "defense exercise agent. The policy is a small Python-like "
        "program produced by a context-free grammar."
    )
    instructions: str = (
        "Mutate the program above: change, add or remove a small number "
        "of statements while keeping every line derivable from the "
        "grammar. Reply with only the mutated program in a fenced code "
        "block."
    )


DEFAULT_TEMPLATE = PromptTemplate()


def build_prompt(template: PromptTemplate, grammar: Grammar, program: str) -> str:
    """Assemble the mutation prompt: persona, grammar, code, instructions."""
    grammar_text = grammar.to_text().strip()
    program = program.strip()
    sections = {
        "persona": template.persona.strip(),
        "instructions": template.instructions.strip(),
        "grammar": grammar_text,
        "program": program,
    }
    for name, text in sections.items():
        if not text:
            raise ValueError(f"prompt section {name!r} is empty")
    return (
        f"{sections['persona']}\n\n"
        f"{GRAMMAR_HEADER}\n\n{grammar_text}\n\n"
        f"{PROGRAM_HEADER}\n\n```python\n{program}\n```\n\n"
        f"{sections['instructions']}\n"
    )


@dataclass(frozen=True)
class CompletionResult:
    """One raw completion: text plus whatever the service reported."""

    text: str
    tokens: Optional[int] = None
    latency: float = 0.0


class CompletionClient(Protocol):
    def complete(self, prompt: str) -> CompletionResult: ...


def extract_code(text: str) -> str:
    """The last fenced block of a reply, or the whole reply when unfenced."""
    blocks = _FENCE.findall(text)
    return (blocks[-1] if blocks else text).strip()


class EchoClient:
    """Returns the prompt's program unchanged; the identity mutation."""

    def complete(self, prompt: str) -> CompletionResult:
        return CompletionResult(text=f"```python\n{extract_code(prompt)}\n```")


class ScriptedClient:
    """Replays a fixed list of responses, cycling when exhausted."""

    def __init__(self, responses: Sequence[str]):
        if not responses:
            raise ValueError("ScriptedClient needs at least one response")
        self._responses = list(responses)
        self._cursor = 0

    def complete(self, prompt: str) -> CompletionResult:
        text = self._responses[self._cursor % len(self._responses)]
        self._cursor += 1
        return CompletionResult(text=text)


class ExpandingMockClient:
    """Offline stand-in: appends one grammar-legal action assignment.

    The new statement lands at the end of the action section, so the
    mutated program stays inside the grammar while its behavior (the
    final action assignment wins) actually changes.  Without an explicit
    grammar the client reads the one embedded in each prompt, so a
    single instance serves prompts from either side.
    """

    def __init__(self, grammar: Optional[Grammar] = None, seed: int = 0):
        self._actions = grammar.action_terminals() if grammar is not None else None
        self._rng = np.random.default_rng(seed)

    def _legal_actions(self, prompt: str) -> tuple[str, ...]:
        if self._actions is not None:
            return self._actions
        from .grammar.parse import parse_grammar

        try:
            section = prompt.split(GRAMMAR_HEADER, 1)[1].split(PROGRAM_HEADER, 1)[0]
            return parse_grammar(section.strip()).action_terminals()
        except Exception as exc:
            raise ValueError(f"prompt carries no readable grammar: {exc}") from exc

    def complete(self, prompt: str) -> CompletionResult:
        program = extract_code(prompt)
        actions = self._legal_actions(prompt)
        action = actions[int(self._rng.integers(len(actions)))]
        lines = program.splitlines()
        insert_at = len(lines)
        for i, line in enumerate(lines):
            stripped = line.strip()
            if stripped.startswith("#Select target") or stripped.startswith(
                "target_heuristic"
            ) or stripped.startswith("return"):
                insert_at = i
                break
        lines.insert(insert_at, f"    action = {action}")
        return CompletionResult(text="```python\n" + "\n".join(lines) + "\n```")


class HttpClient:
    """Minimal chat-completions client: one attempt, fixed timeout."""

    def __init__(
        self,
        url: str,
        model: str,
        api_key: Optional[str] = None,
        timeout: float = 30.0,
    ):
        self.url = url
        self.model = model
        self.api_key = api_key
        self.timeout = timeout

    def complete(self, prompt: str) -> CompletionResult:
        import requests

        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        payload = {
            "model": self.model,
            "messages": [{"role": "user", "content": prompt}],
        }
        started = time.perf_counter()
        response = requests.post(
            self.url, json=payload, headers=headers, timeout=self.timeout
        )
        response.raise_for_status()
        body = response.json()
        text = body["choices"][0]["message"]["content"]
        usage = body.get("usage", {})
        tokens = usage.get("total_tokens")
        return CompletionResult(
            text=text,
            tokens=tokens,
            latency=time.perf_counter() - started,
        )


@dataclass
class LlmStats:
    """Counters over every mutation attempt in a run."""

    calls: int = 0
    successes: int = 0
    parse_failures: int = 0
    transport_failures: int = 0
    tokens_total: int = 0
    latency_total: float = 0.0
    errors: list[str] = field(default_factory=list)

    def summary(self) -> dict:
        calls = max(self.calls, 1)
        return {
            "calls": self.calls,
            "successes": self.successes,
            "parse_failures": self.parse_failures,
            "transport_failures": self.transport_failures,
            "success_rate": self.successes / calls,
            "tokens_total": self.tokens_total,
            "mean_latency": self.latency_total / calls,
        }


def format_stats(stats: LlmStats) -> str:
    s = stats.summary()
    return (
        f"llm calls: {s['calls']}  ok: {s['successes']}  "
        f"parse failures: {s['parse_failures']}  "
        f"transport failures: {s['transport_failures']}  "
        f"success rate: {s['success_rate']:.2f}  "
        f"tokens: {s['tokens_total']}  "
        f"mean latency: {s['mean_latency'] * 1000:.1f} ms"
    )


@dataclass(frozen=True)
class MutationOutcome:
    """What one program mutation produced (ok=False keeps the old team out)."""

    ok: bool
    program: Optional[str] = None
    ast: Optional[RuleAst] = None
    team: Optional[Team] = None
    error: Optional[str] = None


def llm_mutate(
    client: CompletionClient,
    program: str,
    grammar: Grammar,
    decoder,
    stats: LlmStats,
    template: PromptTemplate = DEFAULT_TEMPLATE,
) -> MutationOutcome:
    """Ask the client for a mutated program and validate it via the grammar."""
    prompt = build_prompt(template, grammar, program)
    stats.calls += 1
    started = time.perf_counter()
    try:
        completion = client.complete(prompt)
    except Exception as exc:  # transport problems become flagged individuals
        stats.transport_failures += 1
        stats.errors.append(f"transport: {exc}")
        stats.latency_total += time.perf_counter() - started
        return MutationOutcome(ok=False, error=str(exc))
    latency = completion.latency or (time.perf_counter() - started)
    stats.latency_total += latency
    tokens = completion.tokens
    if tokens is None:
        tokens = len(prompt.split()) + len(completion.text.split())
    stats.tokens_total += int(tokens)
    code = extract_code(completion.text)
    try:
        tree = parse_program(code, grammar)
    except ProgramParseError as exc:
        stats.parse_failures += 1
        stats.errors.append(f"parse: {exc}")
        return MutationOutcome(ok=False, error=str(exc))
    ast = build_ast(tree, grammar)
    team = decoder.team_from_ast(ast)
    stats.successes += 1
    return MutationOutcome(
        ok=True,
        program=render_program(tree),
        ast=ast,
        team=team,
    )
