"""CSV ingestion, min-max scaling and stratified fold planning."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
import yaml

from .exceptions import DatasetError


@dataclass(frozen=True)
class Dataset:
    """Feature matrix with densely indexed class labels.

    Attributes
    ----------
    name : str
        Human readable identifier, usually the file stem.
    features : ndarray of shape (n_instances, n_features)
        Real-valued features. Columns lie in [0, 1] once
        :func:`normalize_min_max` has been applied.
    labels : ndarray of shape (n_instances,)
        Integer class indices ``0 .. n_classes - 1``.
    classes : tuple
        Original label values, indexed by class index.
    """

    name: str
    features: np.ndarray
    labels: np.ndarray
    classes: tuple = field(default=())

    def __post_init__(self):
        features = np.ascontiguousarray(self.features, dtype=np.float64)
        labels = np.ascontiguousarray(self.labels, dtype=np.intp)
        if features.ndim != 2:
            raise DatasetError(f"{self.name}: features must be a 2-D matrix")
        if labels.shape != (features.shape[0],):
            raise DatasetError(f"{self.name}: labels length does not match number of rows")
        if features.shape[1] < 1:
            raise DatasetError(f"{self.name}: dataset has no feature columns")
        features.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        if not self.classes:
            object.__setattr__(self, "classes", tuple(range(int(labels.max()) + 1)))

    @property
    def n_instances(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def subset(self, rows) -> "Dataset":
        """Rows ``rows`` as a new dataset, keeping the class index space."""
        rows = np.asarray(rows, dtype=np.intp)
        return replace(self, features=self.features[rows], labels=self.labels[rows])


@dataclass(frozen=True)
class FoldPlan:
    """``k`` disjoint index arrays that together cover every instance."""

    folds: tuple

    @property
    def k(self) -> int:
        return len(self.folds)

    @property
    def n_instances(self) -> int:
        return sum(len(f) for f in self.folds)

    def fold_of(self) -> np.ndarray:
        """Fold id of every instance."""
        out = np.empty(self.n_instances, dtype=np.intp)
        for i, fold in enumerate(self.folds):
            out[fold] = i
        return out


def _parse_number(cell: str) -> float:
    value = float(cell)
    if not math.isfinite(value):
        raise ValueError(cell)
    return value


def load_csv(path, has_header: bool = False, name: str | None = None) -> Dataset:
    """Read a comma separated file whose last column is the class label.

    Labels are re-indexed densely in order of first appearance. Features
    are returned unscaled.
    """
    path = Path(path)
    if not path.is_file():
        raise DatasetError(f"dataset file not found: {path}")
    with path.open(newline="") as fh:
        rows = [row for row in csv.reader(fh) if row and any(c.strip() for c in row)]
    if has_header:
        rows = rows[1:]
    if not rows:
        raise DatasetError(f"{path}: no data rows")

    width = len(rows[0])
    if width < 2:
        raise DatasetError(f"{path}: need at least one feature column and a label column")

    features = np.empty((len(rows), width - 1), dtype=np.float64)
    class_index: dict[str, int] = {}
    labels = np.empty(len(rows), dtype=np.intp)
    for i, row in enumerate(rows):
        if len(row) != width:
            raise DatasetError(f"{path}: row {i + 1} has {len(row)} columns, expected {width}")
        for j, cell in enumerate(row[:-1]):
            cell = cell.strip()
            if cell in ("", "?", "NA", "NaN", "nan"):
                raise DatasetError(f"{path}: missing value at row {i + 1}, column {j + 1}")
            try:
                features[i, j] = _parse_number(cell)
            except ValueError:
                raise DatasetError(
                    f"{path}: non-numeric value {cell!r} at row {i + 1}, column {j + 1}"
                ) from None
        labels[i] = class_index.setdefault(row[-1].strip(), len(class_index))

    if len(class_index) < 2:
        raise DatasetError(f"{path}: fewer than 2 distinct classes")
    return Dataset(name or path.stem, features, labels, tuple(class_index))


def normalize_min_max(raw: Dataset) -> Dataset:
    """Map each column onto [0, 1]; constant columns become all zeros."""
    x = raw.features
    lo = x.min(axis=0)
    span = x.max(axis=0) - lo
    safe = np.where(span > 0, span, 1.0)
    scaled = np.where(span > 0, (x - lo) / safe, 0.0)
    # guard against 1 + eps from rounding
    np.clip(scaled, 0.0, 1.0, out=scaled)
    return replace(raw, features=scaled)


def stratified_folds(ds: Dataset, k: int, rng: np.random.Generator) -> FoldPlan:
    """Shuffle each class with ``rng`` and deal its members round-robin.

    The dealing position carries over from one class to the next, which keeps
    fold sizes within one of each other as well as per-class counts.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if k > ds.n_instances:
        raise ValueError(f"k={k} exceeds the number of instances ({ds.n_instances})")
    buckets: list[list[int]] = [[] for _ in range(k)]
    offset = 0
    for c in range(ds.n_classes):
        members = np.flatnonzero(ds.labels == c)
        if members.size == 0:
            continue
        members = members[rng.permutation(members.size)]
        for j, idx in enumerate(members):
            buckets[(offset + j) % k].append(int(idx))
        offset = (offset + members.size) % k
    return FoldPlan(tuple(np.sort(np.array(b, dtype=np.intp)) for b in buckets))


def load_manifest(path) -> dict[str, tuple[Path, bool]]:
    """Parse a YAML manifest ``name -> {path, has_header}``.

    Relative paths resolve against the manifest's directory. A bare string
    value is taken as the path with no header row.
    """
    path = Path(path)
    try:
        data = yaml.safe_load(path.read_text())
    except OSError as exc:
        raise DatasetError(f"cannot read manifest {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise DatasetError(f"{path}: manifest must map dataset names to files")
    entries = data.get("datasets", data)
    out = {}
    for name, entry in entries.items():
        if isinstance(entry, str):
            entry = {"path": entry}
        file = Path(entry["path"])
        if not file.is_absolute():
            file = path.parent / file
        out[str(name)] = (file, bool(entry.get("has_header", False)))
    return out


def load_dataset(path, has_header: bool = False, name: str | None = None) -> Dataset:
    """Load and normalize in one go."""
    return normalize_min_max(load_csv(path, has_header=has_header, name=name))
