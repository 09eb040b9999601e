"""Concrete program text for controller derivations.

`render_program` lays out a finished derivation tree as readable,
Python-like text with four-space indentation.  `parse_program` does the
reverse: it ignores all whitespace and reconstructs a derivation tree
by matching the grammar's productions against the remaining characters
with full backtracking.  Round-tripping a tree through render and parse
yields a structurally identical tree.
"""

from __future__ import annotations

from typing import Iterator

from ..errors import ProgramParseError
from .mapping import tree_terminals
from .model import DerivNode, Grammar, NonTerminal, Symbol, Terminal

_INDENT = "    "

_LIST_RULES = frozenset({"statements", "th_statements"})


def _render_statement(node: DerivNode, depth: int, lines: list[str]) -> None:
    first = node.children[0]
    if isinstance(first.symbol, Terminal) and first.symbol.value == "if":
        test = " ".join(tree_terminals(node.children[1]))
        lines.append(f"{_INDENT * depth}if {test}:")
        _render_statement(node.children[3], depth + 1, lines)
    else:
        keyword = first.symbol.value  # type: ignore[union-attr]
        value = node.children[1].children[0].symbol.value  # type: ignore[union-attr]
        lines.append(f"{_INDENT * depth}{keyword} {value}")


def _render_statement_list(node: DerivNode, depth: int, lines: list[str]) -> None:
    while True:
        _render_statement(node.children[0], depth, lines)
        if len(node.children) == 1:
            return
        node = node.children[1]


def render_program(tree: DerivNode) -> str:
    """Lay out a finished controller derivation tree as indented text."""
    lines: list[str] = []
    for child in tree.children:
        if isinstance(child.symbol, Terminal):
            text = child.symbol.value
            if text.startswith("def "):
                lines.append(text)
            else:
                lines.append(_INDENT + text)
        elif child.symbol.name in _LIST_RULES:
            _render_statement_list(child, 1, lines)
        else:
            raise ValueError(f"cannot render section symbol {child.symbol!r}")
    return "\n".join(lines) + "\n"


def _squish(text: str) -> str:
    return "".join(text.split())


def _match(
    grammar: Grammar, symbol: Symbol, text: str, pos: int
) -> Iterator[tuple[DerivNode, int]]:
    if isinstance(symbol, Terminal):
        token = _squish(symbol.value)
        if token and text.startswith(token, pos):
            node = DerivNode(symbol)
            yield node, pos + len(token)
        return
    for production in grammar.rules[symbol.name]:
        for children, end in _match_sequence(grammar, production, 0, text, pos):
            node = DerivNode(symbol)
            node.children = children
            yield node, end


def _match_sequence(
    grammar: Grammar,
    production: tuple[Symbol, ...],
    index: int,
    text: str,
    pos: int,
) -> Iterator[tuple[list[DerivNode], int]]:
    if index == len(production):
        yield [], pos
        return
    for node, mid in _match(grammar, production[index], text, pos):
        for rest, end in _match_sequence(grammar, production, index + 1, text, mid):
            yield [node, *rest], end


def parse_program(text: str, grammar: Grammar) -> DerivNode:
    """Reconstruct the derivation tree of rendered (or LLM-written) code.

    All whitespace is ignored, so indentation and line breaks carry no
    meaning.  Raises `ProgramParseError` when no complete derivation of
    the grammar matches the text.
    """
    squished = _squish(text)
    if not squished:
        raise ProgramParseError("program text is empty")
    start = NonTerminal(grammar.start)
    for tree, end in _match(grammar, start, squished, 0):
        if end == len(squished):
            return tree
    raise ProgramParseError(
        f"text does not derive from rule {grammar.start!r}: {text[:80]!r}"
    )
