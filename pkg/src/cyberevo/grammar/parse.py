"""Parser for grammar definition text.

The format is ``name: alternative | alternative`` with double-quoted
terminals and bare nonterminal references.  A rule starts at column
zero; indented lines continue the previous rule.  The first rule is the
start symbol.
"""

from __future__ import annotations

import re

from ..errors import GrammarParseError
from .model import Grammar, NonTerminal, Production, Symbol, Terminal

_RULE_HEAD = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*:\s*(.*)$")
_BARE_TOKEN = re.compile(r"[^\s|\"]+")


def _split_alternatives(text: str, rule: str) -> list[str]:
    parts = []
    current = []
    in_quote = False
    for ch in text:
        if ch == '"':
            in_quote = not in_quote
            current.append(ch)
        elif ch == "|" and not in_quote:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if in_quote:
        raise GrammarParseError(f"unterminated quote in rule {rule!r}")
    parts.append("".join(current))
    return parts


def _tokenize(alternative: str, rule: str) -> Production:
    symbols: list[Symbol] = []
    i = 0
    while i < len(alternative):
        ch = alternative[i]
        if ch.isspace():
            i += 1
            continue
        if ch == '"':
            end = alternative.find('"', i + 1)
            if end < 0:
                raise GrammarParseError(f"unterminated terminal in rule {rule!r}")
            symbols.append(Terminal(alternative[i + 1:end]))
            i = end + 1
        else:
            match = _BARE_TOKEN.match(alternative, i)
            assert match is not None
            symbols.append(NonTerminal(match.group(0)))
            i = match.end()
    if not symbols:
        raise GrammarParseError(f"rule {rule!r} has an empty alternative")
    return tuple(symbols)


def parse_grammar(text: str) -> Grammar:
    """Parse definition text into a `Grammar`.

    Raises `GrammarParseError` for empty input, empty alternatives,
    duplicate rules and references to undefined rules.
    """
    chunks: list[tuple[str, list[str]]] = []
    for raw_line in text.splitlines():
        if not raw_line.strip():
            continue
        head = _RULE_HEAD.match(raw_line) if not raw_line[0].isspace() else None
        if head:
            chunks.append((head.group(1), [head.group(2)]))
        else:
            if not chunks:
                raise GrammarParseError(f"continuation line before any rule: {raw_line!r}")
            chunks[-1][1].append(raw_line.strip())
    if not chunks:
        raise GrammarParseError("grammar text contains no rules")

    rules: dict[str, tuple[Production, ...]] = {}
    for name, lines in chunks:
        if name in rules:
            raise GrammarParseError(f"duplicate rule {name!r}")
        body = " ".join(lines).strip()
        body = body[1:] if body.startswith("|") else body
        alternatives = _split_alternatives(body, name)
        rules[name] = tuple(_tokenize(alt, name) for alt in alternatives)

    defined = set(rules)
    for name, productions in rules.items():
        for production in productions:
            for symbol in production:
                if isinstance(symbol, NonTerminal) and symbol.name not in defined:
                    raise GrammarParseError(f"rule {name!r} references undefined {symbol.name!r}")

    start = next(iter(rules))
    return Grammar(rules=rules, start=start, source=text)
