from .experiment import ExperimentConfig, ReportTable, RunRecord, aggregate, run_experiment, run_single
from .oracle import oracle_search
from .report import emit_reports, read_run_log

__all__ = [
    "ExperimentConfig",
    "ReportTable",
    "RunRecord",
    "aggregate",
    "emit_reports",
    "oracle_search",
    "read_run_log",
    "run_experiment",
    "run_single",
]
