"""Binary PSO and binary GSA comparators.

Both share the ALO budget: ``population`` evaluations to initialize and
``population`` per iteration.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .binary_alo import OptimizerConfig, RunResult, make_evaluator
from .dataset import Dataset, FoldPlan
from .exceptions import ConfigError
from .fitness import FitnessEvaluator
from .transfer import TransferFunction, binarize

GSA_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class PsoConfig:
    inertia: float = 0.1
    c1: float = 0.1
    c2: float = 0.1
    v_max: float = 6.0
    transfer: TransferFunction = TransferFunction.S0

    def __post_init__(self):
        object.__setattr__(self, "transfer", TransferFunction.parse(self.transfer))
        if min(self.inertia, self.c1, self.c2) < 0:
            raise ConfigError("PSO coefficients must be non-negative")
        if self.v_max <= 0:
            raise ConfigError("v_max must be positive")


@dataclass(frozen=True)
class GsaConfig:
    g0: float = 100.0
    alpha_decay: float = 20.0
    v_max: float = 6.0
    transfer: TransferFunction = TransferFunction.V0

    def __post_init__(self):
        object.__setattr__(self, "transfer", TransferFunction.parse(self.transfer))
        if self.g0 <= 0 or self.alpha_decay <= 0:
            raise ConfigError("g0 and alpha_decay must be positive")
        if self.v_max <= 0:
            raise ConfigError("v_max must be positive")


def _values(fitness) -> np.ndarray:
    return np.array([f.value for f in fitness])


def run_bpso(pso: PsoConfig, cfg: OptimizerConfig, ds: Dataset, plan: FoldPlan, rng=None,
             evaluator: FitnessEvaluator | None = None) -> RunResult:
    """Binary PSO with velocity clamping and transfer-function sampling."""
    rng = np.random.default_rng(rng)
    if evaluator is None:
        evaluator = make_evaluator(cfg, ds, plan)
    n, dim = cfg.population, evaluator.n_features

    start = time.perf_counter()
    x = rng.random((n, dim)) < 0.5
    v = np.zeros((n, dim))
    fit = evaluator.evaluate_many(x)
    pbest, pbest_fit = x.copy(), list(fit)
    g = int(np.argmin(_values(fit)))
    gbest, gbest_fit = x[g].copy(), fit[g]
    history = [gbest_fit.value]

    for _ in range(cfg.iterations):
        xf, pf, gf = x.astype(float), pbest.astype(float), gbest.astype(float)
        for i in range(n):
            r1 = rng.random(dim)
            r2 = rng.random(dim)
            v[i] = pso.inertia * v[i] + pso.c1 * r1 * (pf[i] - xf[i]) + pso.c2 * r2 * (gf - xf[i])
            np.clip(v[i], -pso.v_max, pso.v_max, out=v[i])
            x[i] = binarize(v[i], x[i], pso.transfer, rng)
        fit = evaluator.evaluate_many(x)
        for i, f in enumerate(fit):
            if f.value < pbest_fit[i].value:
                pbest[i], pbest_fit[i] = x[i], f
            if f.value < gbest_fit.value:
                gbest, gbest_fit = x[i].copy(), f
        history.append(gbest_fit.value)

    elapsed = time.perf_counter() - start
    return RunResult(gbest, gbest_fit, history, elapsed, evaluator.n_requests,
                     evaluator.n_evaluations, algorithm="bpso")


def gravitational_constant(t: float, T: float, g0: float = 100.0, alpha_decay: float = 20.0) -> float:
    """``g0 * exp(-alpha_decay * t / T)``."""
    return g0 * math.exp(-alpha_decay * t / T)


def kbest_size(t: int, T: int, population: int) -> int:
    """Number of attracting agents, shrinking linearly from ``population`` to 1."""
    return max(1, int(round(population - (population - 1) * t / T)))


def masses(fitness_values) -> np.ndarray:
    """Normalized masses under minimization; equal fitness gives equal mass."""
    f = np.asarray(fitness_values, dtype=np.float64)
    best, worst = f.min(), f.max()
    if worst == best:
        m = np.ones_like(f)
    else:
        m = (worst - f) / (worst - best)
    return m / m.sum()


def gsa_accelerations(positions, fitness_values, G: float, kbest: int, rng: np.random.Generator):
    """Acceleration of every agent from the ``kbest`` heaviest agents.

    Distances between bit vectors are Hamming distances. Each attracting
    agent's pull is scaled by one uniform draw.
    """
    x = np.asarray(positions, dtype=np.float64)
    m = masses(fitness_values)
    order = np.argsort(np.asarray(fitness_values), kind="stable")[:kbest]
    acc = np.zeros_like(x)
    for i in range(x.shape[0]):
        for j in order:
            if j == i:
                continue
            diff = x[j] - x[i]
            dist = np.count_nonzero(diff)
            acc[i] += rng.random() * m[j] * diff / (dist + GSA_EPS)
    return G * acc


def run_bgsa(gsa: GsaConfig, cfg: OptimizerConfig, ds: Dataset, plan: FoldPlan, rng=None,
             evaluator: FitnessEvaluator | None = None) -> RunResult:
    """Binary GSA: mass-weighted attraction, V-shaped bit flips."""
    rng = np.random.default_rng(rng)
    if evaluator is None:
        evaluator = make_evaluator(cfg, ds, plan)
    n, dim, T = cfg.population, evaluator.n_features, cfg.iterations

    start = time.perf_counter()
    x = rng.random((n, dim)) < 0.5
    v = np.zeros((n, dim))
    fit = evaluator.evaluate_many(x)
    b = int(np.argmin(_values(fit)))
    best, best_fit = x[b].copy(), fit[b]
    history = [best_fit.value]

    for t in range(1, T + 1):
        G = gravitational_constant(t, T, gsa.g0, gsa.alpha_decay)
        acc = gsa_accelerations(x, _values(fit), G, kbest_size(t, T, n), rng)
        for i in range(n):
            v[i] = rng.random(dim) * v[i] + acc[i]
            np.clip(v[i], -gsa.v_max, gsa.v_max, out=v[i])
            x[i] = binarize(v[i], x[i], gsa.transfer, rng)
        fit = evaluator.evaluate_many(x)
        b = int(np.argmin(_values(fit)))
        if fit[b].value < best_fit.value:
            best, best_fit = x[b].copy(), fit[b]
        history.append(best_fit.value)

    elapsed = time.perf_counter() - start
    return RunResult(best, best_fit, history, elapsed, evaluator.n_requests,
                     evaluator.n_evaluations, algorithm="bgsa")
