"""Binary ant lion optimizer for wrapper feature selection.

Each ant takes two guided walks per iteration, one around the elite and one
around an antlion picked by roulette. Both walks are binarized with the
configured transfer function and mixed by uniform crossover. An antlion takes
over its paired ant's position whenever the ant is strictly fitter.

Random draws come from a single generator in a fixed order (initial ants,
initial antlions, then per iteration and per ant: roulette, elite walk,
elite binarization, roulette walk, roulette binarization, crossover), so a
seed reproduces a run exactly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .alo_engine import center_bounds, random_walks, ratio_I, roulette_select, shrink_bounds, walk_position
from .dataset import Dataset, FoldPlan
from .exceptions import ConfigError
from .fitness import FitnessEvaluator, FitnessValue, FitnessWeights
from .knn import DEFAULT_K_NEIGHBORS
from .transfer import TransferFunction, binarize


@dataclass(frozen=True)
class OptimizerConfig:
    population: int = 8
    iterations: int = 70
    transfer: TransferFunction = TransferFunction.V3
    weights: FitnessWeights = field(default_factory=FitnessWeights)
    k_neighbors: int = DEFAULT_K_NEIGHBORS

    def __post_init__(self):
        object.__setattr__(self, "transfer", TransferFunction.parse(self.transfer))
        if isinstance(self.weights, (int, float)):
            object.__setattr__(self, "weights", FitnessWeights(float(self.weights)))
        if self.population < 2:
            raise ConfigError("population must be >= 2")
        if self.iterations < 1:
            raise ConfigError("iterations must be >= 1")
        if self.k_neighbors < 1:
            raise ConfigError("k_neighbors must be >= 1")


@dataclass
class Colony:
    ants: np.ndarray
    antlions: np.ndarray
    ant_fitness: list
    antlion_fitness: list
    elite: np.ndarray
    elite_fitness: FitnessValue
    iteration: int = 0

    @property
    def antlion_values(self) -> np.ndarray:
        return np.array([f.value for f in self.antlion_fitness])


@dataclass
class RunResult:
    best_mask: np.ndarray
    best: FitnessValue
    fitness_history: list
    elapsed: float
    n_requests: int
    n_evaluations: int
    algorithm: str = ""

    @property
    def best_fitness(self) -> float:
        return self.best.value

    @property
    def accuracy(self) -> float:
        return self.best.accuracy

    @property
    def subset_size(self) -> int:
        return self.best.subset_size


def make_evaluator(cfg: OptimizerConfig, ds: Dataset, plan: FoldPlan) -> FitnessEvaluator:
    return FitnessEvaluator(ds, plan, cfg.weights, cfg.k_neighbors)


def _best_index(fitness: list) -> int:
    return int(np.argmin([f.value for f in fitness]))


def initialize(cfg: OptimizerConfig, evaluator: FitnessEvaluator, rng: np.random.Generator) -> Colony:
    n, dim = cfg.population, evaluator.n_features
    ants = rng.random((n, dim)) < 0.5
    antlions = rng.random((n, dim)) < 0.5
    ant_fitness = evaluator.evaluate_many(ants)
    antlion_fitness = evaluator.evaluate_many(antlions)
    best = _best_index(antlion_fitness)
    return Colony(ants, antlions, ant_fitness, antlion_fitness,
                  antlions[best].copy(), antlion_fitness[best])


def guided_binary_walk(guide, cfg: OptimizerConfig, t: int, rng: np.random.Generator) -> np.ndarray:
    """Walk around ``guide`` at iteration ``t`` and binarize the displacement."""
    guide = np.asarray(guide, dtype=bool)
    anchor = guide.astype(np.float64)
    dim = anchor.shape[0]
    shrunk = shrink_bounds(np.zeros(dim), np.ones(dim), ratio_I(t, cfg.iterations))
    bounds = center_bounds(anchor, shrunk, rng)
    walks = random_walks(cfg.iterations, dim, rng)
    point = walk_position(walks, t, bounds.lower, bounds.upper)
    return binarize(point - anchor, guide, cfg.transfer, rng)


def crossover(first, second, rng: np.random.Generator) -> np.ndarray:
    """Uniform crossover: each bit comes from ``first`` with probability 1/2."""
    pick = rng.random(np.shape(first)[0]) < 0.5
    return np.where(pick, first, second)


def step(colony: Colony, cfg: OptimizerConfig, evaluator: FitnessEvaluator,
         rng: np.random.Generator) -> Colony:
    """Advance the colony by one iteration (mutates and returns ``colony``)."""
    if colony.iteration >= cfg.iterations:
        raise ValueError("colony has already completed the configured iterations")
    t = colony.iteration + 1
    weights = colony.antlion_values  # frozen for the whole iteration
    ants = np.empty_like(colony.ants)
    for i in range(cfg.population):
        chosen = roulette_select(weights, rng)
        rw1 = guided_binary_walk(colony.elite, cfg, t, rng)
        rw2 = guided_binary_walk(colony.antlions[chosen], cfg, t, rng)
        ants[i] = crossover(rw1, rw2, rng)

    colony.ants = ants
    colony.ant_fitness = evaluator.evaluate_many(ants)
    for i, fit in enumerate(colony.ant_fitness):
        if fit.value < colony.antlion_fitness[i].value:
            colony.antlions[i] = ants[i]
            colony.antlion_fitness[i] = fit
    best = _best_index(colony.antlion_fitness)
    if colony.antlion_fitness[best].value < colony.elite_fitness.value:
        colony.elite = colony.antlions[best].copy()
        colony.elite_fitness = colony.antlion_fitness[best]
    colony.iteration = t
    return colony


def run(cfg: OptimizerConfig, ds: Dataset, plan: FoldPlan, rng=None,
        evaluator: FitnessEvaluator | None = None) -> RunResult:
    """Initialize a colony and iterate it ``cfg.iterations`` times.

    ``rng`` may be a seed or a ``numpy.random.Generator``. Pass ``evaluator``
    to share a fitness cache or to inspect its counters afterwards.
    """
    rng = np.random.default_rng(rng)
    if evaluator is None:
        evaluator = make_evaluator(cfg, ds, plan)
    start = time.perf_counter()
    colony = initialize(cfg, evaluator, rng)
    history = [colony.elite_fitness.value]
    for _ in range(cfg.iterations):
        step(colony, cfg, evaluator, rng)
        history.append(colony.elite_fitness.value)
    elapsed = time.perf_counter() - start
    return RunResult(colony.elite.copy(), colony.elite_fitness, history, elapsed,
                     evaluator.n_requests, evaluator.n_evaluations,
                     algorithm=f"alo-{cfg.transfer.value}")
