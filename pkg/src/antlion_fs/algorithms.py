"""Name -> optimizer lookup shared by the estimators and the benchmark CLI."""

from __future__ import annotations

from dataclasses import replace

from . import binary_alo
from .baselines import GsaConfig, PsoConfig, run_bgsa, run_bpso
from .binary_alo import OptimizerConfig, RunResult
from .dataset import Dataset, FoldPlan
from .exceptions import ConfigError
from .fitness import FitnessEvaluator
from .transfer import TransferFunction

ALO_VARIANTS = {
    "alo-s1": TransferFunction.S1,
    "alo-s2": TransferFunction.S2,
    "alo-s3": TransferFunction.S3,
    "alo-v1": TransferFunction.V1,
    "alo-v2": TransferFunction.V2,
    "alo-v3": TransferFunction.V3,
    "balo1": TransferFunction.S0,
    "balo2": TransferFunction.V0,
}
BASELINES = ("bpso", "bgsa")
ALGORITHMS = tuple(ALO_VARIANTS) + BASELINES


def check_algorithm(name: str) -> str:
    key = name.strip().lower()
    if key not in ALGORITHMS:
        raise ConfigError(f"unknown algorithm {name!r}; expected one of {', '.join(ALGORITHMS)}")
    return key


def run_algorithm(name: str, cfg: OptimizerConfig, ds: Dataset, plan: FoldPlan, rng=None,
                  evaluator: FitnessEvaluator | None = None,
                  pso: PsoConfig | None = None, gsa: GsaConfig | None = None) -> RunResult:
    """Run ``name`` on ``ds``; ``cfg.transfer`` is overridden for ALO variants."""
    name = check_algorithm(name)
    if name in ALO_VARIANTS:
        result = binary_alo.run(replace(cfg, transfer=ALO_VARIANTS[name]), ds, plan, rng, evaluator)
    elif name == "bpso":
        result = run_bpso(pso or PsoConfig(), cfg, ds, plan, rng, evaluator)
    else:
        result = run_bgsa(gsa or GsaConfig(), cfg, ds, plan, rng, evaluator)
    result.algorithm = name
    return result
