"""Program text rendering and whitespace-insensitive reparsing."""

from __future__ import annotations

import numpy as np
import pytest

from cyberevo.errors import ProgramParseError
from cyberevo.grammar.mapping import build_ast, map_genome, tree_terminals
from cyberevo.grammar.program import parse_program, render_program
from cyberevo.grammar.variants import Variant, load_grammar

MONITOR_CODONS = [0, 0, 1, 2]
MONITOR_TEXT = (
    "def select_action_and_target(observation, name):\n"
    "    #Select action\n"
    "    action = Monitor\n"
    "    target_heuristic = random_target\n"
    "    return action, target_heuristic\n"
)


def tree_equal(a, b) -> bool:
    if a.symbol != b.symbol or len(a.children) != len(b.children):
        return False
    return all(tree_equal(x, y) for x, y in zip(a.children, b.children))


def valid_tree(grammar, rng, length=200):
    while True:
        result = map_genome(rng.integers(0, 256, size=length).tolist(), grammar)
        if not result.invalid:
            return result.tree


def test_render_known_tree_exactly():
    grammar = load_grammar("blue")
    result = map_genome(MONITOR_CODONS, grammar)
    assert render_program(result.tree) == MONITOR_TEXT


def test_render_indents_nested_ifs():
    grammar = load_grammar("blue")
    result = map_genome([0, 0, 0, 2, 0, 1, 0, 1, 3], grammar)
    text = render_program(result.tree)
    assert (
        "    if root_access_levels(observation, name) > 1:\n"
        "        action = AllowTrafficZone\n"
    ) in text
    assert text.startswith("def select_action_and_target(observation, name):\n")


def test_parse_recovers_the_rendered_tree():
    grammar = load_grammar("blue")
    original = map_genome(MONITOR_CODONS, grammar).tree
    reparsed = parse_program(MONITOR_TEXT, grammar)
    assert tree_equal(original, reparsed)


def test_parse_ignores_whitespace_entirely():
    grammar = load_grammar("blue")
    squashed = "".join(MONITOR_TEXT.split())
    spread = MONITOR_TEXT.replace("    ", "\t\t").replace("\n", "\n\n")
    reference = parse_program(MONITOR_TEXT, grammar)
    assert tree_equal(parse_program(squashed, grammar), reference)
    assert tree_equal(parse_program(spread, grammar), reference)


def test_render_parse_render_is_a_fixpoint_for_random_programs():
    rng = np.random.default_rng(21)
    for side in ("red", "blue"):
        for variant in (Variant.BASELINE, Variant.TC, Variant.OE):
            grammar = load_grammar(side, variant)
            for _ in range(10):
                tree = valid_tree(grammar, rng)
                text = render_program(tree)
                reparsed = parse_program(text, grammar)
                assert render_program(reparsed) == text
                assert tree_terminals(reparsed) == tree_terminals(tree)
                assert build_ast(reparsed, grammar) == build_ast(tree, grammar)


def test_parse_rejects_text_outside_the_grammar():
    grammar = load_grammar("blue")
    with pytest.raises(ProgramParseError):
        parse_program("", grammar)
    with pytest.raises(ProgramParseError):
        parse_program("   \n\t ", grammar)
    with pytest.raises(ProgramParseError):
        parse_program("action = Monitor\n", grammar)  # missing the scaffold
    with pytest.raises(ProgramParseError):
        parse_program(MONITOR_TEXT + "action = Monitor\n", grammar)  # trailing junk
    with pytest.raises(ProgramParseError):
        parse_program(MONITOR_TEXT.replace("Monitor", "Impact"), grammar)  # red action


def test_parse_rejects_wrong_side_but_accepts_shared_shape():
    red = load_grammar("red")
    blue_text = MONITOR_TEXT
    with pytest.raises(ProgramParseError):
        parse_program(blue_text, red)
    red_text = blue_text.replace("Monitor", "Impact")
    tree = parse_program(red_text, red)
    assert "Impact" in tree_terminals(tree)


def test_target_section_round_trip():
    grammar = load_grammar("blue", Variant.TC)
    text = (
        "def select_action_and_target(observation, name):\n"
        "    #Select action\n"
        "    action = Analyse\n"
        "    #Select target\n"
        "    if TRUE == observation['success']:\n"
        "        target_heuristic = first_target\n"
        "    return action, target_heuristic\n"
    )
    tree = parse_program(text, grammar)
    assert render_program(tree) == text
    ast = build_ast(tree, grammar)
    assert ast.target_statements  # the evolved target block survived
    assert ast.action_statements[0].action == "Analyse"
