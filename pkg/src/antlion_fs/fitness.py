"""Wrapper fitness: weighted CV error plus selected-feature ratio, minimized."""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, FoldPlan
from .knn import DEFAULT_K_NEIGHBORS, CrossValidatedKNN

DEFAULT_ALPHA = 0.99


@dataclass(frozen=True)
class FitnessWeights:
    alpha: float = DEFAULT_ALPHA

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")

    @property
    def beta(self) -> float:
        return 1.0 - self.alpha


@dataclass(frozen=True)
class FitnessValue:
    value: float
    error_rate: float
    subset_size: int

    @property
    def accuracy(self) -> float:
        return 1.0 - self.error_rate


WORST = FitnessValue(1.0, 1.0, 0)


def combine(error_rate: float, subset_size: int, n_features: int, weights: FitnessWeights) -> FitnessValue:
    """``alpha * error + beta * subset_size / n_features``; empty subsets score 1.0."""
    if subset_size == 0:
        return WORST
    value = weights.alpha * error_rate + weights.beta * subset_size / n_features
    return FitnessValue(value, error_rate, subset_size)


def evaluate(mask, ds: Dataset, plan: FoldPlan, weights: FitnessWeights = FitnessWeights(),
             k_neighbors: int = DEFAULT_K_NEIGHBORS) -> FitnessValue:
    return FitnessEvaluator(ds, plan, weights, k_neighbors).evaluate(mask)


class FitnessEvaluator:
    """Memoizing fitness function bound to one dataset and fold plan.

    ``n_requests`` counts every call to :meth:`__call__` (the optimizer's
    evaluation budget); ``n_evaluations`` counts classifier runs, which
    excludes cache hits and empty masks.
    """

    def __init__(self, ds: Dataset, plan: FoldPlan, weights: FitnessWeights = FitnessWeights(),
                 k_neighbors: int = DEFAULT_K_NEIGHBORS, use_cache: bool = True):
        self.ds = ds
        self.plan = plan
        self.weights = weights
        self.k_neighbors = k_neighbors
        self.use_cache = use_cache
        self.knn = CrossValidatedKNN(ds, plan, k_neighbors)
        self._cache: dict[bytes, FitnessValue] = {}
        self._lock = threading.Lock()
        self.n_requests = 0

    @property
    def n_features(self) -> int:
        return self.ds.n_features

    @property
    def n_evaluations(self) -> int:
        return self.knn.n_calls

    def _check(self, mask) -> np.ndarray:
        mask = np.asarray(mask)
        if mask.shape != (self.ds.n_features,):
            raise ValueError(f"mask has shape {mask.shape}, expected ({self.ds.n_features},)")
        return mask.astype(bool, copy=False)

    def evaluate(self, mask) -> FitnessValue:
        """Uncached fitness of ``mask``."""
        mask = self._check(mask)
        size = int(np.count_nonzero(mask))
        if size == 0:
            return WORST
        return combine(self.knn.error_rate(mask), size, self.ds.n_features, self.weights)

    def __call__(self, mask) -> FitnessValue:
        mask = self._check(mask)
        with self._lock:
            self.n_requests += 1
        if not self.use_cache:
            return self.evaluate(mask)
        key = np.packbits(mask).tobytes()
        hit = self._cache.get(key)
        if hit is None:
            hit = self.evaluate(mask)
            with self._lock:
                hit = self._cache.setdefault(key, hit)
        return hit

    def evaluate_many(self, masks) -> list[FitnessValue]:
        return [self(m) for m in masks]

    def clear_cache(self) -> None:
        with self._lock:
            self._cache.clear()

    @property
    def cache_size(self) -> int:
        return len(self._cache)
