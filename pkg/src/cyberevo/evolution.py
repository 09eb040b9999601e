"""One-sided evolutionary training against a fixed adversary.

Three solution representations share a generational loop with elitism
and tournament selection:

- continuous matrix genomes ([0, 1] genes, Gaussian mutation),
- discrete matrix genomes (codes 0..3, redraw mutation),
- integer codon genomes decoded through a controller grammar (redraw
  mutation, or LLM-driven program mutation when a client is supplied).

Invalid grammar decodes are replaced by fresh random individuals; if a
fresh valid individual cannot be found within the retry cap, the
individual is kept invalid and scored below the worst fitness seen so
far.  Simulation faults during evaluation are scored the same way.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .controllers.matrix import decode_matrix_team, team_genome_length, team_size
from .controllers.rules import RuleController
from .episodes import Team, run_episode
from .errors import ControllerError, SimulationFault
from .grammar.ast import RuleAst
from .grammar.mapping import map_genome
from .grammar.model import Grammar
from .grammar.program import render_program
from .grammar.variants import Variant, load_grammar
from .scenario.config import ScenarioConfig
from .seeds import STREAM_EPISODE, STREAM_VARIATION, derive_seed, spawn_generator
from .traces import FitnessTrace

INVALID_PENALTY = 1000.0
CODON_MAX = 255
GE_GENOME_LENGTH = 1000


@dataclass
class EvoConfig:
    """Knobs of the evolutionary loop (defaults follow the experiment setup)."""

    population_size: int = 10
    iterations: int = 20
    trials: int = 6
    elite_count: int = 1
    tournament_size: int = 2
    crossover_p: float = 0.5
    mutation_p: float = 0.5
    es_sigma: float = 0.1
    repetitions: int = 2
    invalid_retry_cap: int = 100
    controllers_per_team: str = "one"

    def __post_init__(self) -> None:
        if self.population_size < 2:
            raise ValueError("population_size must be at least 2")
        if self.elite_count < 0 or self.elite_count >= self.population_size:
            raise ValueError("elite_count must be in [0, population_size)")
        if self.controllers_per_team not in ("one", "many"):
            raise ValueError("controllers_per_team must be 'one' or 'many'")


@dataclass
class Individual:
    """One candidate solution: a genome and its decoded controller team."""

    genome: np.ndarray
    team: Optional[Team]
    valid: bool
    fitness: Optional[float] = None
    program: Optional[str] = None
    ast: Optional[RuleAst] = None
    detached: bool = False  # program was edited directly; genome is stale

    def clone_unevaluated(self) -> "Individual":
        return replace(self, fitness=None)


@dataclass(frozen=True)
class DecodeOutcome:
    team: Optional[Team]
    valid: bool
    program: Optional[str] = None
    ast: Optional[RuleAst] = None


class MatrixTeamDecoder:
    """Genomes are flat matrix cells; every in-range genome is valid."""

    def __init__(self, side: str, mode: str = "one", encoding: str = "continuous"):
        if encoding not in ("continuous", "discrete4"):
            raise ControllerError(f"unknown matrix encoding {encoding!r}")
        self.side = side
        self.mode = mode
        self.encoding = encoding
        self.genome_length = team_genome_length(side, mode)

    def random_genome(self, rng: np.random.Generator) -> np.ndarray:
        if self.encoding == "continuous":
            return rng.random(self.genome_length)
        return rng.integers(0, 4, size=self.genome_length)

    def decode(self, genome: np.ndarray) -> DecodeOutcome:
        team = decode_matrix_team(genome, self.side, self.mode, self.encoding)
        return DecodeOutcome(team=team, valid=True)

    def mutate(
        self, genome: np.ndarray, rng: np.random.Generator, config: EvoConfig
    ) -> np.ndarray:
        mask = rng.random(genome.shape[0]) < config.mutation_p
        child = genome.copy()
        if self.encoding == "continuous":
            noise = rng.normal(0.0, config.es_sigma, size=genome.shape[0])
            child[mask] = np.clip(child[mask] + noise[mask], 0.0, 1.0)
        else:
            child[mask] = rng.integers(0, 4, size=int(mask.sum()))
        return child


class RuleTeamDecoder:
    """Codon genomes decoded through a controller grammar."""

    def __init__(
        self,
        side: str,
        variant: Variant = Variant.BASELINE,
        mode: str = "one",
        grammar: Optional[Grammar] = None,
        genome_length: int = GE_GENOME_LENGTH,
    ):
        self.side = side
        self.variant = Variant(variant)
        self.mode = mode
        self.grammar = grammar if grammar is not None else load_grammar(side, self.variant)
        self.controllers = 1 if mode == "one" else team_size(side)
        self.genome_length = genome_length * self.controllers
        self._chunk = genome_length

    def random_genome(self, rng: np.random.Generator) -> np.ndarray:
        return rng.integers(0, CODON_MAX + 1, size=self.genome_length)

    def decode(self, genome: np.ndarray) -> DecodeOutcome:
        controllers = []
        programs = []
        first_ast: Optional[RuleAst] = None
        for c in range(self.controllers):
            chunk = genome[c * self._chunk:(c + 1) * self._chunk]
            result = map_genome(chunk, self.grammar)
            if result.invalid:
                return DecodeOutcome(team=None, valid=False)
            controllers.append(
                RuleController(result.ast, self.side, grammar=self.grammar)
            )
            programs.append(render_program(result.tree))
            if first_ast is None:
                first_ast = result.ast
        return DecodeOutcome(
            team=controllers,
            valid=True,
            program="\n".join(programs),
            ast=first_ast,
        )

    def team_from_ast(self, ast: RuleAst) -> Team:
        """Build a shared-controller team from a directly edited program."""
        return [RuleController(ast, self.side, grammar=self.grammar)]

    def mutate(
        self, genome: np.ndarray, rng: np.random.Generator, config: EvoConfig
    ) -> np.ndarray:
        mask = rng.random(genome.shape[0]) < config.mutation_p
        child = genome.copy()
        child[mask] = rng.integers(0, CODON_MAX + 1, size=int(mask.sum()))
        return child


def make_decoder(
    algorithm: str,
    side: str,
    controllers_per_team: str = "one",
    variant: Variant = Variant.BASELINE,
):
    """Map an algorithm family to its solution representation."""
    if algorithm == "ES":
        return MatrixTeamDecoder(side, controllers_per_team, "continuous")
    if algorithm == "GA":
        return MatrixTeamDecoder(side, controllers_per_team, "discrete4")
    if algorithm in ("GE", "GE-LLM"):
        return RuleTeamDecoder(side, variant, controllers_per_team)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def tournament_select(
    population: Sequence[Individual], rng: np.random.Generator, k: int = 2
) -> Individual:
    """k-way tournament with replacement; ties keep the earliest draw."""
    best: Optional[Individual] = None
    for _ in range(k):
        candidate = population[int(rng.integers(len(population)))]
        if best is None or candidate.fitness > best.fitness:
            best = candidate
    return best


def one_point_crossover(
    genome_a: np.ndarray, genome_b: np.ndarray, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Swap tails at a cut point strictly inside both genomes."""
    if genome_a.shape[0] != genome_b.shape[0]:
        raise ValueError("crossover needs genomes of equal length")
    cut = int(rng.integers(1, genome_a.shape[0]))
    child_a = np.concatenate([genome_a[:cut], genome_b[cut:]])
    child_b = np.concatenate([genome_b[:cut], genome_a[cut:]])
    return child_a, child_b


def fresh_individual(
    decoder, rng: np.random.Generator, retry_cap: int
) -> Individual:
    """Random individual, retrying invalid grammar decodes up to the cap."""
    genome = decoder.random_genome(rng)
    outcome = decoder.decode(genome)
    attempts = 0
    while not outcome.valid and attempts < retry_cap:
        genome = decoder.random_genome(rng)
        outcome = decoder.decode(genome)
        attempts += 1
    return Individual(
        genome=genome,
        team=outcome.team,
        valid=outcome.valid,
        program=outcome.program,
        ast=outcome.ast,
    )


def evaluate_team(
    team: Team,
    adversary: Team,
    side: str,
    config: ScenarioConfig,
    seeds: Sequence[int],
) -> float:
    """Mean episode reward of `team` (on its own side) across seeds."""
    total = 0.0
    for seed in seeds:
        if side == "blue":
            result = run_episode(config, seed, team, adversary)
            total += result.blue_total
        else:
            result = run_episode(config, seed, adversary, team)
            total += result.red_total
    return total / len(seeds)


@dataclass
class _EvalState:
    worst_seen: float = 0.0
    episodes: int = 0

    def penalty(self) -> float:
        return self.worst_seen - INVALID_PENALTY

    def record(self, fitness: float) -> None:
        self.worst_seen = min(self.worst_seen, fitness)


def episode_seeds(
    master_seed: int, trial: int, iteration: int, i: int, j: int, repetitions: int
) -> list[int]:
    """Deterministic seeds for each repeated episode of one evaluation."""
    return [
        derive_seed(master_seed, trial, iteration, i, j, rep, STREAM_EPISODE)
        for rep in range(repetitions)
    ]


def _evaluate(
    individual: Individual,
    index: int,
    side: str,
    adversary: Team,
    scenario: ScenarioConfig,
    evo: EvoConfig,
    master_seed: int,
    trial: int,
    iteration: int,
    state: _EvalState,
) -> None:
    if not individual.valid:
        individual.fitness = state.penalty()
        return
    seeds = episode_seeds(master_seed, trial, iteration, index, 0, evo.repetitions)
    try:
        fitness = evaluate_team(individual.team, adversary, side, scenario, seeds)
    except SimulationFault:
        state.episodes += len(seeds)
        individual.fitness = state.penalty()
        return
    state.episodes += len(seeds)
    individual.fitness = fitness
    state.record(fitness)


@dataclass
class EvolutionResult:
    """Everything a finished one-sided run produced."""

    trace: FitnessTrace
    best_per_trial: list[Individual]
    episodes_total: int
    llm_report: Optional[dict] = None

    @property
    def best(self) -> Individual:
        return max(self.best_per_trial, key=lambda ind: ind.fitness)


def _make_children(
    population: list[Individual],
    decoder,
    rng: np.random.Generator,
    evo: EvoConfig,
    needed: int,
    llm_client,
    llm_stats,
) -> list[Individual]:
    children: list[Individual] = []
    while len(children) < needed:
        parent_a = tournament_select(population, rng, evo.tournament_size)
        parent_b = tournament_select(population, rng, evo.tournament_size)
        detached = parent_a.detached or parent_b.detached
        if not detached and rng.random() < evo.crossover_p:
            genomes = one_point_crossover(parent_a.genome, parent_b.genome, rng)
        else:
            genomes = (parent_a.genome.copy(), parent_b.genome.copy())
        for which, genome in enumerate(genomes):
            if len(children) >= needed:
                break
            parent = (parent_a, parent_b)[which]
            if llm_client is not None:
                children.append(
                    _llm_child(parent, genome, decoder, llm_client, llm_stats, rng, evo)
                )
                continue
            mutated = decoder.mutate(genome, rng, evo)
            outcome = decoder.decode(mutated)
            if outcome.valid:
                children.append(
                    Individual(
                        genome=mutated,
                        team=outcome.team,
                        valid=True,
                        program=outcome.program,
                        ast=outcome.ast,
                    )
                )
            else:
                children.append(
                    fresh_individual(decoder, rng, evo.invalid_retry_cap)
                )
    return children


def _llm_child(
    parent: Individual,
    genome: np.ndarray,
    decoder,
    client,
    stats,
    rng: np.random.Generator,
    evo: EvoConfig,
) -> Individual:
    """Mutate by editing the parent's program text through the client."""
    from .llm import llm_mutate

    if parent.detached:
        program = parent.program
    else:
        outcome = decoder.decode(genome)
        if not outcome.valid:
            return fresh_individual(decoder, rng, evo.invalid_retry_cap)
        program = outcome.program
    mutation = llm_mutate(client, program, decoder.grammar, decoder, stats)
    if not mutation.ok:
        # Failed mutations are replaced the same way invalid decodes are:
        # by a fresh random individual, so a failing backend cannot stall
        # the run.
        return fresh_individual(decoder, rng, evo.invalid_retry_cap)
    return Individual(
        genome=genome,
        team=mutation.team,
        valid=True,
        program=mutation.program,
        ast=mutation.ast,
        detached=True,
    )


def evolve_one_sided(
    side: str,
    decoder,
    adversary: Team,
    scenario: ScenarioConfig,
    evo: EvoConfig,
    master_seed: int,
    label: str,
    llm_client=None,
    llm_stats=None,
) -> EvolutionResult:
    """Evolve one side against a fixed adversary team.

    Writes one trace record per (trial, iteration); `best` per record is
    the current population's best cached fitness, which is monotone
    within a trial because the elite keeps its exact fitness.
    """
    if llm_client is not None and evo.controllers_per_team != "one":
        raise ValueError("LLM mutation edits a single shared controller program")
    if llm_client is not None and llm_stats is None:
        from .llm import LlmStats  # local import keeps the LLM layer optional

        llm_stats = LlmStats()
    trace = FitnessTrace()
    best_per_trial: list[Individual] = []
    state = _EvalState()
    for trial in range(evo.trials):
        rng = spawn_generator(master_seed, STREAM_VARIATION, trial)
        population = [
            fresh_individual(decoder, rng, evo.invalid_retry_cap)
            for _ in range(evo.population_size)
        ]
        for iteration in range(evo.iterations):
            marker = state.episodes
            for index, individual in enumerate(population):
                if individual.fitness is None:
                    _evaluate(
                        individual, index, side, adversary, scenario, evo,
                        master_seed, trial, iteration, state,
                    )
            fits = [ind.fitness for ind in population]
            trace.append(
                trial, iteration, side, label,
                max(fits), float(np.mean(fits)), state.episodes - marker,
            )
            if iteration == evo.iterations - 1:
                break
            elites = sorted(
                population, key=lambda ind: ind.fitness, reverse=True
            )[: evo.elite_count]
            children = _make_children(
                population, decoder, rng, evo,
                evo.population_size - len(elites), llm_client, llm_stats,
            )
            population = elites + children
        best_per_trial.append(
            max(population, key=lambda ind: ind.fitness)
        )
    report = llm_stats.summary() if llm_stats is not None else None
    return EvolutionResult(
        trace=trace,
        best_per_trial=best_per_trial,
        episodes_total=state.episodes,
        llm_report=report,
    )
