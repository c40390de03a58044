"""CSV / Markdown / JSON-lines output for experiment results."""

from __future__ import annotations

import csv
import json
from pathlib import Path

from .experiment import ReportTable, RunRecord, aggregate

CSV_HEADER = ("dataset", "algorithm", "mean", "std", "best", "worst", "runs")

# file stem, metric key, markdown title, higher is better, decimals
TABLES = (
    ("accuracy", "accuracy", "Average classification accuracy", True, 3),
    ("features", "subset_size", "Average number of selected features", False, 2),
    ("time", "time", "Average computational time (seconds)", False, 2),
)

RUN_LOG = "runs.jsonl"


def record_line(rec: RunRecord) -> str:
    return json.dumps(rec.to_dict(), sort_keys=True)


def write_run_log(records, path) -> None:
    with open(path, "w") as fh:
        for rec in records:
            fh.write(record_line(rec) + "\n")


def read_run_log(path) -> list[RunRecord]:
    records = []
    with open(path) as fh:
        for line in fh:
            if line.strip():
                records.append(RunRecord(**json.loads(line)))
    return records


def _markdown_table(table: ReportTable, metric: str, title: str, higher: bool, decimals: int) -> str:
    algos = table.algorithms()
    lines = [f"## {title}", "", "| Dataset | " + " | ".join(algos) + " |",
             "|---|" + "---:|" * len(algos)]
    for ds in table.datasets():
        means = {a: table.get(ds, a, metric).mean for a in algos if (ds, a) in table.rows}
        target = max(means.values()) if higher else min(means.values())
        cells = []
        for a in algos:
            if a not in means:
                cells.append("")
                continue
            text = f"{means[a]:.{decimals}f}"
            cells.append(f"**{text}**" if round(means[a], decimals) == round(target, decimals) else text)
        lines.append(f"| {ds} | " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def emit_reports(table: ReportTable, directory) -> list[Path]:
    """Write one CSV per metric, ``results.md`` and the per-run log."""
    if not table.rows:
        raise ValueError("refusing to write reports for an empty table")
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for stem, metric, _, _, _ in TABLES:
        path = directory / f"{stem}.csv"
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for (ds, algo), metrics in table.rows.items():
                s = metrics[metric]
                writer.writerow([ds, algo, repr(s.mean), repr(s.std), repr(s.best), repr(s.worst), s.runs])
        written.append(path)

    md = directory / "results.md"
    md.write_text("\n".join(_markdown_table(table, metric, title, higher, dec)
                            for _, metric, title, higher, dec in TABLES))
    written.append(md)

    log = directory / RUN_LOG
    write_run_log(table.records, log)
    written.append(log)
    return written


def report_from_log(path) -> ReportTable:
    return aggregate(read_run_log(path))
