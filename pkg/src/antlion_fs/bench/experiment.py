"""Multi-run experiment orchestration and aggregation."""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np
import yaml

from ..algorithms import ALGORITHMS, check_algorithm, run_algorithm
from ..baselines import GsaConfig, PsoConfig
from ..binary_alo import OptimizerConfig
from ..dataset import Dataset, FoldPlan, load_dataset, load_manifest, stratified_folds
from ..exceptions import ConfigError, DatasetError
from ..fitness import FitnessWeights
from ..knn import predict

log = logging.getLogger(__name__)

METRICS = ("accuracy", "subset_size", "time")


@dataclass
class ExperimentConfig:
    manifest: str | None = None
    datasets: list | None = None
    algorithms: list = field(default_factory=lambda: list(ALGORITHMS))
    runs: int = 20
    population: int = 8
    iterations: int = 70
    k_cv: int = 10
    k_neighbors: int = 5
    alpha: float = 0.99
    base_seed: int = 0
    output_dir: str = "results"
    holdout: bool = False
    jobs: int = 1
    pso: dict = field(default_factory=dict)
    gsa: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.runs < 1:
            raise ConfigError("runs must be >= 1")
        if self.k_cv < 2:
            raise ConfigError("k_cv must be >= 2")
        if not self.algorithms:
            raise ConfigError("no algorithms configured")
        self.algorithms = [check_algorithm(a) for a in self.algorithms]
        try:
            FitnessWeights(self.alpha)
            self.optimizer_config()
            self.pso_config()
            self.gsa_config()
        except (ValueError, TypeError) as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_file(cls, path) -> "ExperimentConfig":
        path = Path(path)
        try:
            data = yaml.safe_load(path.read_text()) or {}
        except (OSError, yaml.YAMLError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: config must be a mapping")
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"{path}: unknown config keys {sorted(unknown)}")
        if data.get("manifest") and not Path(data["manifest"]).is_absolute():
            data["manifest"] = str(path.parent / data["manifest"])
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    def optimizer_config(self) -> OptimizerConfig:
        return OptimizerConfig(self.population, self.iterations, weights=FitnessWeights(self.alpha),
                               k_neighbors=self.k_neighbors)

    def pso_config(self) -> PsoConfig:
        return PsoConfig(**self.pso)

    def gsa_config(self) -> GsaConfig:
        return GsaConfig(**self.gsa)


@dataclass
class RunRecord:
    """One optimizer run; everything except ``time`` is seed-determined."""

    dataset: str
    algorithm: str
    run: int
    seed: int
    accuracy: float
    error_rate: float
    fitness: float
    subset_size: int
    n_features: int
    mask: str
    n_requests: int
    n_evaluations: int
    fitness_history: list
    time: float
    holdout_accuracy: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def mask_to_bits(mask) -> str:
    """Feature 0 is the leftmost character."""
    return "".join("1" if b else "0" for b in np.asarray(mask, dtype=bool))


def bits_to_mask(bits: str) -> np.ndarray:
    return np.array([c == "1" for c in bits], dtype=bool)


def _holdout_split(ds: Dataset, plan: FoldPlan) -> tuple[Dataset, FoldPlan, Dataset]:
    """Fold 0 becomes the test set; the other folds are re-indexed for selection."""
    test_rows = plan.folds[0]
    train_rows = np.sort(np.concatenate(plan.folds[1:]))
    position = np.full(ds.n_instances, -1, dtype=np.intp)
    position[train_rows] = np.arange(train_rows.size)
    inner = FoldPlan(tuple(position[f] for f in plan.folds[1:]))
    return ds.subset(train_rows), inner, ds.subset(test_rows)


def run_single(ds: Dataset, algorithm: str, seed: int, cfg: ExperimentConfig, run: int = 0) -> RunRecord:
    """Seeded folds then one optimizer run; the same seed always gives the same record."""
    rng = np.random.default_rng(seed)
    plan = stratified_folds(ds, cfg.k_cv, rng)
    holdout_acc = None
    search_ds, search_plan = ds, plan
    if cfg.holdout:
        search_ds, search_plan, test = _holdout_split(ds, plan)
    result = run_algorithm(algorithm, cfg.optimizer_config(), search_ds, search_plan, rng,
                           pso=cfg.pso_config(), gsa=cfg.gsa_config())
    if cfg.holdout:
        if result.subset_size:
            pred = predict(search_ds.features, search_ds.labels, test.features, result.best_mask,
                           cfg.k_neighbors, n_classes=ds.n_classes)
            holdout_acc = float(np.mean(pred == test.labels))
        else:
            holdout_acc = 0.0
    return RunRecord(
        dataset=ds.name,
        algorithm=algorithm,
        run=run,
        seed=seed,
        accuracy=result.accuracy,
        error_rate=result.best.error_rate,
        fitness=result.best_fitness,
        subset_size=result.subset_size,
        n_features=ds.n_features,
        mask=mask_to_bits(result.best_mask),
        n_requests=result.n_requests,
        n_evaluations=result.n_evaluations,
        fitness_history=[float(v) for v in result.fitness_history],
        time=result.elapsed,
        holdout_accuracy=holdout_acc,
    )


@dataclass(frozen=True)
class MetricSummary:
    mean: float
    std: float
    best: float
    worst: float
    runs: int


def summarize(values, higher_is_better: bool) -> MetricSummary:
    arr = np.asarray(values, dtype=np.float64)
    best, worst = (arr.max(), arr.min()) if higher_is_better else (arr.min(), arr.max())
    return MetricSummary(float(arr.mean()), float(arr.std()), float(best), float(worst), int(arr.size))


@dataclass
class ReportTable:
    """Per (dataset, algorithm) summaries plus the run records behind them."""

    rows: dict
    records: list

    def datasets(self) -> list:
        return list(dict.fromkeys(k[0] for k in self.rows))

    def algorithms(self) -> list:
        return list(dict.fromkeys(k[1] for k in self.rows))

    def get(self, dataset: str, algorithm: str, metric: str) -> MetricSummary:
        return self.rows[(dataset, algorithm)][metric]


def _reported_accuracy(rec: RunRecord) -> float:
    return rec.accuracy if rec.holdout_accuracy is None else rec.holdout_accuracy


def aggregate(records) -> ReportTable:
    groups: dict = {}
    for rec in records:
        groups.setdefault((rec.dataset, rec.algorithm), []).append(rec)
    rows = {}
    for key, recs in groups.items():
        rows[key] = {
            "accuracy": summarize([_reported_accuracy(r) for r in recs], higher_is_better=True),
            "subset_size": summarize([r.subset_size for r in recs], higher_is_better=False),
            "time": summarize([r.time for r in recs], higher_is_better=False),
        }
    return ReportTable(rows, list(records))


def _load_datasets(cfg: ExperimentConfig) -> dict[str, Dataset]:
    if not cfg.manifest:
        raise ConfigError("experiment config needs a dataset manifest")
    manifest = load_manifest(cfg.manifest)
    names = cfg.datasets or list(manifest)
    missing = [n for n in names if n not in manifest]
    if missing:
        raise ConfigError(f"datasets not in manifest: {missing}")
    loaded = {}
    for name in names:
        path, header = manifest[name]
        try:
            ds = load_dataset(path, has_header=header, name=name)
            if ds.n_instances < cfg.k_cv:
                raise DatasetError(f"{name}: fewer instances than folds")
            loaded[name] = ds
        except DatasetError as exc:
            log.error("skipping dataset %s: %s", name, exc)
    return loaded


def run_experiment(cfg: ExperimentConfig, datasets: dict[str, Dataset] | None = None) -> ReportTable:
    """Every configured algorithm on every dataset for ``cfg.runs`` seeds.

    Run ``r`` uses seed ``base_seed + r`` for both its folds and its
    optimizer, so algorithms sharing a run index also share folds.
    """
    if datasets is None:
        datasets = _load_datasets(cfg)
        if not datasets:
            raise DatasetError("no dataset could be loaded")
    tasks = [(ds, algo, cfg.base_seed + r, r)
             for ds in datasets.values() for algo in cfg.algorithms for r in range(cfg.runs)]
    if cfg.jobs == 1:
        records = []
        for ds, algo, seed, r in tasks:
            records.append(run_single(ds, algo, seed, cfg, r))
            log.info("%s %s run %d: acc=%.4f size=%d", ds.name, algo, r,
                     records[-1].accuracy, records[-1].subset_size)
    else:
        from joblib import Parallel, delayed

        records = Parallel(n_jobs=cfg.jobs)(
            delayed(run_single)(ds, algo, seed, cfg, r) for ds, algo, seed, r in tasks)
    return aggregate(records)
