"""Brute-force KNN restricted to a feature mask, with cross-validated error.

Neighbours are ordered by ``(distance, training index)``. Vote ties go to the
class of the nearest neighbour among the tied classes. Squared distances are
accumulated feature by feature in ascending column order so the vectorized
path and the single-query path agree bit for bit.
"""

from __future__ import annotations

import math

import numpy as np

from .dataset import Dataset, FoldPlan

DEFAULT_K_NEIGHBORS = 5


def _as_mask(mask, n_features: int) -> np.ndarray:
    mask = np.asarray(mask).astype(bool, copy=False)
    if mask.shape != (n_features,):
        raise ValueError(f"mask has shape {mask.shape}, expected ({n_features},)")
    return mask


def _squared_distance(a, b, columns) -> float:
    total = 0.0
    for j in columns:
        diff = float(a[j]) - float(b[j])
        total += diff * diff
    return total


def masked_distance(a, b, mask) -> float:
    """Euclidean distance between two rows over the selected dimensions."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError("rows differ in length")
    mask = _as_mask(mask, a.shape[0])
    if not mask.any():
        raise ValueError("empty feature mask")
    return math.sqrt(_squared_distance(a, b, np.flatnonzero(mask)))


def _vote(neighbor_labels: np.ndarray):
    counts: dict = {}
    for lab in neighbor_labels:
        counts[lab] = counts.get(lab, 0) + 1
    best = max(counts.values())
    # neighbours are already nearest first
    for lab in neighbor_labels:
        if counts[lab] == best:
            return lab.item() if isinstance(lab, np.generic) else lab
    raise AssertionError("unreachable")


def classify(train_features, train_labels, query, mask, k_neighbors: int = DEFAULT_K_NEIGHBORS):
    """Majority label among the ``k_neighbors`` nearest training rows."""
    train_features = np.asarray(train_features, dtype=np.float64)
    train_labels = np.asarray(train_labels)
    if train_features.shape[0] == 0:
        raise ValueError("empty training set")
    if k_neighbors < 1:
        raise ValueError("k_neighbors must be >= 1")
    mask = _as_mask(mask, train_features.shape[1])
    if not mask.any():
        raise ValueError("empty feature mask")
    query = np.asarray(query, dtype=np.float64)

    d2 = np.zeros(train_features.shape[0])
    for j in np.flatnonzero(mask):
        diff = train_features[:, j] - query[j]
        d2 += diff * diff
    order = np.argsort(d2, kind="stable")[:k_neighbors]
    return _vote(train_labels[order])


def _nearest(d2: np.ndarray, k: int) -> np.ndarray:
    """Column indices of the ``k`` smallest entries per row, ordered by (value, column)."""
    m = d2.shape[0]
    kth = np.partition(d2, k - 1, axis=1)[:, k - 1, None]
    take = d2 <= kth
    surplus = np.flatnonzero(np.count_nonzero(take, axis=1) > k)
    if surplus.size:
        # keep only the lowest-index entries among those equal to the k-th value
        sub = d2[surplus]
        less = sub < kth[surplus]
        need = k - np.count_nonzero(less, axis=1)
        r, c = np.nonzero(sub == kth[surplus])
        starts = np.searchsorted(r, np.arange(surplus.size))
        keep = (np.arange(r.size) - starts[r]) < need[r]
        less[r[keep], c[keep]] = True
        take[surplus] = less
    cols = np.nonzero(take)[1].reshape(m, k)
    order = np.argsort(np.take_along_axis(d2, cols, axis=1), axis=1, kind="stable")
    return np.take_along_axis(cols, order, axis=1)


def _vote_rows(labels: np.ndarray, n_classes: int) -> np.ndarray:
    """Row-wise majority vote; label ``n_classes`` marks a missing neighbour."""
    m, k = labels.shape
    rows = np.arange(m)
    counts = np.zeros((m, n_classes + 1), dtype=np.intp)
    for col in range(k):
        counts[rows, labels[:, col]] += 1
    counts[:, n_classes] = -1
    tied = counts == counts.max(axis=1, keepdims=True)
    first = np.argmax(tied[rows[:, None], labels], axis=1)
    return labels[rows, first]


def _predict_from_d2(d2, train_labels, n_classes, k):
    k = min(k, d2.shape[1])
    cols = _nearest(d2, k)
    labels = train_labels[cols]
    # neighbours at infinite distance are excluded rows, not real candidates
    labels[np.isinf(np.take_along_axis(d2, cols, axis=1))] = n_classes
    return _vote_rows(labels, n_classes)


def _knn_block(queries, train, train_labels, n_classes, columns, k):
    d2 = np.zeros((queries.shape[0], train.shape[0]))
    for j in columns:
        diff = queries[:, j, None] - train[None, :, j]
        diff *= diff
        d2 += diff
    return _predict_from_d2(d2, train_labels, n_classes, k)


def predict(train_features, train_labels, queries, mask, k_neighbors=DEFAULT_K_NEIGHBORS,
            n_classes=None, block_size=1024) -> np.ndarray:
    """Vectorized :func:`classify` for many query rows."""
    train_features = np.asarray(train_features, dtype=np.float64)
    train_labels = np.asarray(train_labels, dtype=np.intp)
    queries = np.atleast_2d(np.asarray(queries, dtype=np.float64))
    if train_features.shape[0] == 0:
        raise ValueError("empty training set")
    mask = _as_mask(mask, train_features.shape[1])
    if not mask.any():
        raise ValueError("empty feature mask")
    if n_classes is None:
        n_classes = int(train_labels.max()) + 1
    columns = np.flatnonzero(mask)
    out = np.empty(queries.shape[0], dtype=np.intp)
    for start in range(0, queries.shape[0], block_size):
        stop = start + block_size
        out[start:stop] = _knn_block(queries[start:stop], train_features, train_labels,
                                     n_classes, columns, k_neighbors)
    return out


class CrossValidatedKNN:
    """Out-of-fold KNN error for a fixed dataset and fold plan.

    Every instance is classified by the instances of the other folds.
    Per-feature squared-difference matrices are cached when the whole set
    fits in ``max_cache_bytes``; otherwise distances are rebuilt per call in
    row blocks. ``n_calls`` counts classifier passes.
    """

    def __init__(self, ds: Dataset, plan: FoldPlan, k_neighbors: int = DEFAULT_K_NEIGHBORS,
                 block_size: int = 1024, max_cache_bytes: int = 512 * 2**20):
        if plan.n_instances != ds.n_instances:
            raise ValueError("fold plan does not cover the dataset")
        if k_neighbors < 1:
            raise ValueError("k_neighbors must be >= 1")
        self.ds = ds
        self.plan = plan
        self.k_neighbors = k_neighbors
        self.block_size = block_size
        self.fold_of = plan.fold_of()
        self.n_calls = 0
        n = ds.n_instances
        self._cached = n * n * (ds.n_features + 2) * 8 <= max_cache_bytes
        self._sq: dict[int, np.ndarray] = {}
        if self._cached:
            # 0 off-fold, inf within a fold (self included); x + 0.0 == x exactly
            self._penalty = np.where(self.fold_of[:, None] == self.fold_of[None, :], np.inf, 0.0)

    def _column_sq(self, j: int) -> np.ndarray:
        sq = self._sq.get(j)
        if sq is None:
            col = self.ds.features[:, j]
            sq = col[:, None] - col[None, :]
            sq *= sq
            self._sq[j] = sq
        return sq

    def predict_out_of_fold(self, mask) -> np.ndarray:
        mask = _as_mask(mask, self.ds.n_features)
        if not mask.any():
            raise ValueError("empty feature mask")
        self.n_calls += 1
        x, y, c = self.ds.features, self.ds.labels, self.ds.n_classes
        columns = np.flatnonzero(mask)
        if self._cached:
            d2 = self._penalty.copy()
            for j in columns:
                d2 += self._column_sq(j)
            return _predict_from_d2(d2, y, c, self.k_neighbors)

        out = np.empty(self.ds.n_instances, dtype=np.intp)
        for start in range(0, x.shape[0], self.block_size):
            stop = start + self.block_size
            d2 = np.where(self.fold_of[start:stop, None] == self.fold_of[None, :], np.inf, 0.0)
            for j in columns:
                diff = x[start:stop, j, None] - x[None, :, j]
                diff *= diff
                d2 += diff
            out[start:stop] = _predict_from_d2(d2, y, c, self.k_neighbors)
        return out

    def error_rate(self, mask) -> float:
        pred = self.predict_out_of_fold(mask)
        return float(np.count_nonzero(pred != self.ds.labels)) / self.ds.n_instances


def cv_error(ds: Dataset, mask, plan: FoldPlan, k_neighbors: int = DEFAULT_K_NEIGHBORS) -> float:
    """Fraction of instances misclassified when each fold is predicted from the rest."""
    return CrossValidatedKNN(ds, plan, k_neighbors).error_rate(mask)
