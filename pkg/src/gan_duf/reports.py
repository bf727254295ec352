"""CSV result files.

Every CSV has a header row, one record per line and no timestamps, so two runs
with the same seed produce byte-identical files.
"""

import csv
import io
import logging
import math
from collections.abc import Iterable, Sequence
from typing import Any

logger = logging.getLogger(__name__)

LOSS_COLUMNS = ["step", "loss_d", "loss_g", "info"]
STUDY_COLUMNS = ["study_kind", "dim_setting", "replicate_id", "metric_value"]
TRACE_COLUMNS = ["iteration", "phase", "objective", "best_so_far", "design_vector"]
PERFORMANCE_COLUMNS = ["source", "sample_id", "objective"]
COMPARISON_COLUMNS = ["mode", "nominal", "tau_quantile", "mean", "std", "ground_truth_quantile"]


def format_value(value: Any) -> str:
    """Render floats with full round-trip precision; ``inf``/``nan`` as words."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    if isinstance(value, (list, tuple)):
        return " ".join(format_value(float(v)) for v in value)
    return str(value)


def format_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Format ``rows`` under ``header`` as a CSV string."""
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        if len(row) != len(header):
            raise ValueError(f"row has {len(row)} fields, header has {len(header)}")
        writer.writerow([format_value(v) for v in row])
    return output.getvalue()


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(format_csv(header, rows))
    logger.debug(f"Wrote {path}")
    return path


def read_csv(path: str) -> list[dict[str, str]]:
    with open(path, "r", encoding="utf-8", newline="") as f:
        return list(csv.DictReader(f))


def loss_rows(history: Iterable[dict[str, float]]) -> list[list[Any]]:
    return [[int(h["step"]), h["loss_d"], h["loss_g"], h["info"]] for h in history]
