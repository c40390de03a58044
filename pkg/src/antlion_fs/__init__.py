"""Binary ant lion optimization for wrapper feature selection."""

from .algorithms import ALGORITHMS, run_algorithm
from .baselines import GsaConfig, PsoConfig, run_bgsa, run_bpso
from .binary_alo import Colony, OptimizerConfig, RunResult, run
from .dataset import Dataset, FoldPlan, load_csv, load_dataset, normalize_min_max, stratified_folds
from .exceptions import ConfigError, DatasetError
from .fitness import FitnessEvaluator, FitnessValue, FitnessWeights, evaluate
from .knn import classify, cv_error, masked_distance
from .selection import BinaryALOSelector, BinaryGSASelector, BinaryPSOSelector
from .transfer import TransferFunction, transfer_value

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "BinaryALOSelector",
    "BinaryGSASelector",
    "BinaryPSOSelector",
    "Colony",
    "ConfigError",
    "Dataset",
    "DatasetError",
    "FitnessEvaluator",
    "FitnessValue",
    "FitnessWeights",
    "FoldPlan",
    "GsaConfig",
    "OptimizerConfig",
    "PsoConfig",
    "RunResult",
    "TransferFunction",
    "classify",
    "cv_error",
    "evaluate",
    "load_csv",
    "load_dataset",
    "masked_distance",
    "normalize_min_max",
    "run",
    "run_algorithm",
    "run_bgsa",
    "run_bpso",
    "stratified_folds",
    "transfer_value",
]
