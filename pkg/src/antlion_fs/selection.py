"""scikit-learn compatible wrapper feature selectors."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.feature_selection import SelectorMixin
from sklearn.preprocessing import LabelEncoder
from sklearn.utils.multiclass import check_classification_targets
from sklearn.utils.validation import check_is_fitted, validate_data

from .algorithms import run_algorithm
from .baselines import GsaConfig, PsoConfig
from .binary_alo import OptimizerConfig
from .dataset import Dataset, normalize_min_max, stratified_folds
from .fitness import FitnessWeights
from .transfer import TransferFunction


class _WrapperSelector(SelectorMixin, BaseEstimator):
    """Shared fit logic: scale, draw folds, optimize, keep the best mask."""

    _algorithm: str

    def _optimizer_config(self) -> OptimizerConfig:
        return OptimizerConfig(
            population=self.population,
            iterations=self.iterations,
            weights=FitnessWeights(self.alpha),
            k_neighbors=self.n_neighbors,
        )

    def _run_kwargs(self) -> dict:
        return {}

    def fit(self, X, y):
        X, y = validate_data(self, X, y, dtype=np.float64)
        check_classification_targets(y)
        encoder = LabelEncoder().fit(y)
        ds = Dataset("fit", X, encoder.transform(y), tuple(encoder.classes_))
        if self.scale:
            ds = normalize_min_max(ds)
        rng = np.random.default_rng(self.random_state)
        plan = stratified_folds(ds, self.cv, rng)
        result = run_algorithm(self._algorithm_name(), self._optimizer_config(), ds, plan, rng,
                               **self._run_kwargs())
        self.classes_ = encoder.classes_
        self.support_ = np.asarray(result.best_mask, dtype=bool)
        self.n_features_ = int(self.support_.sum())
        self.best_fitness_ = result.best_fitness
        self.cv_accuracy_ = result.accuracy
        self.fitness_history_ = np.asarray(result.fitness_history)
        self.n_evaluations_ = result.n_requests
        self.result_ = result
        return self

    def _get_support_mask(self):
        check_is_fitted(self, "support_")
        return self.support_

    def _algorithm_name(self) -> str:
        return self._algorithm


class BinaryALOSelector(_WrapperSelector):
    """Wrapper feature selection with the binary ant lion optimizer.

    Subsets are scored by ``alpha * knn_cv_error + (1 - alpha) * ratio`` where
    ``ratio`` is the fraction of selected features; lower is better.

    Parameters
    ----------
    transfer : str, default="v3"
        Transfer function: one of ``s0, s1, s2, s3, v0, v1, v2, v3``.
    population : int, default=8
        Number of ants (and of antlions).
    iterations : int, default=70
        Number of colony updates.
    alpha : float, default=0.99
        Weight of the classification error in the fitness.
    n_neighbors : int, default=5
        Neighbours used by the KNN evaluator.
    cv : int, default=10
        Number of stratified folds used to estimate the error.
    scale : bool, default=True
        Min-max scale each column to [0, 1] before evaluating subsets.
    random_state : int, numpy Generator or None
        Seed for fold assignment and the optimizer.

    Attributes
    ----------
    support_ : ndarray of bool
        Selected features.
    best_fitness_ : float
        Fitness of the selected subset.
    cv_accuracy_ : float
        Cross-validated KNN accuracy of the selected subset.
    fitness_history_ : ndarray
        Best fitness after initialization and after each iteration.
    """

    def __init__(self, transfer="v3", population=8, iterations=70, alpha=0.99, n_neighbors=5,
                 cv=10, scale=True, random_state=None):
        self.transfer = transfer
        self.population = population
        self.iterations = iterations
        self.alpha = alpha
        self.n_neighbors = n_neighbors
        self.cv = cv
        self.scale = scale
        self.random_state = random_state

    def _algorithm_name(self) -> str:
        return {"s0": "balo1", "v0": "balo2"}.get(TransferFunction.parse(self.transfer).value,
                                                  f"alo-{TransferFunction.parse(self.transfer).value}")


class BinaryPSOSelector(_WrapperSelector):
    """Wrapper feature selection with binary particle swarm optimization."""

    _algorithm = "bpso"

    def __init__(self, population=8, iterations=70, alpha=0.99, n_neighbors=5, cv=10,
                 inertia=0.1, c1=0.1, c2=0.1, v_max=6.0, transfer="s0", scale=True,
                 random_state=None):
        self.population = population
        self.iterations = iterations
        self.alpha = alpha
        self.n_neighbors = n_neighbors
        self.cv = cv
        self.inertia = inertia
        self.c1 = c1
        self.c2 = c2
        self.v_max = v_max
        self.transfer = transfer
        self.scale = scale
        self.random_state = random_state

    def _run_kwargs(self):
        return {"pso": PsoConfig(self.inertia, self.c1, self.c2, self.v_max, self.transfer)}


class BinaryGSASelector(_WrapperSelector):
    """Wrapper feature selection with the binary gravitational search algorithm."""

    _algorithm = "bgsa"

    def __init__(self, population=8, iterations=70, alpha=0.99, n_neighbors=5, cv=10,
                 g0=100.0, alpha_decay=20.0, v_max=6.0, transfer="v0", scale=True,
                 random_state=None):
        self.population = population
        self.iterations = iterations
        self.alpha = alpha
        self.n_neighbors = n_neighbors
        self.cv = cv
        self.g0 = g0
        self.alpha_decay = alpha_decay
        self.v_max = v_max
        self.transfer = transfer
        self.scale = scale
        self.random_state = random_state

    def _run_kwargs(self):
        return {"gsa": GsaConfig(self.g0, self.alpha_decay, self.v_max, self.transfer)}
