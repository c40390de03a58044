"""Exhaustive subset search, used as ground truth on small feature counts."""

from __future__ import annotations

import numpy as np

from ..dataset import Dataset, FoldPlan
from ..fitness import FitnessEvaluator, FitnessValue, FitnessWeights
from ..knn import DEFAULT_K_NEIGHBORS

MAX_ORACLE_FEATURES = 15


def mask_from_code(code: int, n_features: int) -> np.ndarray:
    """Bit ``d`` of ``code`` selects feature ``d``."""
    return ((code >> np.arange(n_features)) & 1).astype(bool)


def oracle_search(ds: Dataset, plan: FoldPlan, weights: FitnessWeights = FitnessWeights(),
                  k_neighbors: int = DEFAULT_K_NEIGHBORS,
                  evaluator: FitnessEvaluator | None = None) -> tuple[np.ndarray, FitnessValue]:
    """Global fitness optimum over all ``2**N - 1`` non-empty masks.

    Ties keep the mask with the smallest integer code.
    """
    n = ds.n_features
    if n > MAX_ORACLE_FEATURES:
        raise ValueError(f"exhaustive search is limited to {MAX_ORACLE_FEATURES} features, got {n}")
    if evaluator is None:
        evaluator = FitnessEvaluator(ds, plan, weights, k_neighbors, use_cache=False)
    best_mask, best = None, None
    for code in range(1, 2**n):
        mask = mask_from_code(code, n)
        fit = evaluator.evaluate(mask)
        if best is None or fit.value < best.value:
            best_mask, best = mask, fit
    return best_mask, best
