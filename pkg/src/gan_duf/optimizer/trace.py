"""Bayesian-optimization traces: one JSON line per evaluation plus a summary file."""

from __future__ import annotations

import json
import logging
import math
import os
from dataclasses import dataclass, field
from typing import Any

from gan_duf.reports import TRACE_COLUMNS, write_csv

logger = logging.getLogger(__name__)

TRACE_NAME = "trace.jsonl"
TRACE_CSV_NAME = "trace.csv"
SUMMARY_NAME = "summary.json"


def _encode(value: float | None) -> float | str | None:
    """JSON has no infinities; store non-finite floats by name."""
    if value is None or math.isfinite(value):
        return value
    return str(value)


def _decode(value: float | str | None) -> float | None:
    return None if value is None else float(value)


@dataclass
class BoRecord:
    """One objective evaluation of the optimization loop."""

    iteration: int
    phase: str
    parent: list[float]
    objective: float
    best_so_far: float
    values: list[float] = field(default_factory=list)
    acquisition: float | None = None
    failure_probability: float | None = None
    reliability_index: float | None = None
    feasible: bool = True
    elapsed: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        return {
            "iteration": self.iteration,
            "phase": self.phase,
            "parent": self.parent,
            "objective": _encode(self.objective),
            "best_so_far": _encode(self.best_so_far),
            "values": [_encode(v) for v in self.values],
            "acquisition": _encode(self.acquisition),
            "failure_probability": self.failure_probability,
            "reliability_index": _encode(self.reliability_index),
            "feasible": self.feasible,
            "elapsed": self.elapsed,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> BoRecord:
        return cls(
            iteration=int(data["iteration"]),
            phase=str(data["phase"]),
            parent=[float(v) for v in data["parent"]],
            objective=float(data["objective"]),
            best_so_far=float(data["best_so_far"]),
            values=[float(v) for v in data.get("values", [])],
            acquisition=_decode(data.get("acquisition")),
            failure_probability=_decode(data.get("failure_probability")),
            reliability_index=_decode(data.get("reliability_index")),
            feasible=bool(data.get("feasible", True)),
            elapsed=float(data.get("elapsed", 0.0)),
        )


@dataclass
class BoTrace:
    """Full history of one optimization run and its final solution."""

    mode: str
    seed: int
    budget: dict[str, int]
    config: dict[str, Any]
    evaluator: dict[str, Any] = field(default_factory=dict)
    records: list[BoRecord] = field(default_factory=list)
    started_at: str = ""
    finished_at: str = ""
    solution: list[float] | None = None
    solution_objective: float = -math.inf

    def incumbents(self) -> list[float]:
        return [r.best_so_far for r in self.records]

    def best_record(self) -> BoRecord | None:
        feasible = [r for r in self.records if r.feasible and math.isfinite(r.objective)]
        if not feasible:
            return None
        return max(feasible, key=lambda r: r.objective)

    def summary(self) -> dict[str, Any]:
        return {
            "mode": self.mode,
            "seed": self.seed,
            "budget": self.budget,
            "config": self.config,
            "evaluator": self.evaluator,
            "n_evaluations": len(self.records),
            "started_at": self.started_at,
            "finished_at": self.finished_at,
            "solution": self.solution,
            "solution_objective": _encode(self.solution_objective),
        }

    def csv_rows(self) -> list[list[Any]]:
        return [
            [r.iteration, r.phase, r.objective, r.best_so_far, r.parent] for r in self.records
        ]

    def write(self, directory: str) -> dict[str, str]:
        """Write ``trace.jsonl``, ``trace.csv`` and ``summary.json`` into ``directory``."""
        os.makedirs(directory, exist_ok=True)
        paths = {
            "trace": os.path.join(directory, TRACE_NAME),
            "csv": os.path.join(directory, TRACE_CSV_NAME),
            "summary": os.path.join(directory, SUMMARY_NAME),
        }
        with open(paths["trace"], "w", encoding="utf-8") as f:
            for record in self.records:
                f.write(json.dumps(record.to_dict(), sort_keys=True) + "\n")
        write_csv(paths["csv"], TRACE_COLUMNS, self.csv_rows())
        with open(paths["summary"], "w", encoding="utf-8") as f:
            json.dump(self.summary(), f, indent=2, sort_keys=True)
        logger.info(f"Trace of {len(self.records)} evaluations written to {directory}")
        return paths

    @classmethod
    def read(cls, directory: str) -> BoTrace:
        """Load a trace written by :meth:`write`.

        Raises:
            FileNotFoundError: If the summary or the trace file is missing.
        """
        with open(os.path.join(directory, SUMMARY_NAME), "r", encoding="utf-8") as f:
            summary = json.load(f)
        with open(os.path.join(directory, TRACE_NAME), "r", encoding="utf-8") as f:
            records = [BoRecord.from_dict(json.loads(line)) for line in f if line.strip()]
        return cls(
            mode=summary["mode"],
            seed=int(summary["seed"]),
            budget=summary["budget"],
            config=summary["config"],
            evaluator=summary.get("evaluator", {}),
            records=records,
            started_at=summary.get("started_at", ""),
            finished_at=summary.get("finished_at", ""),
            solution=summary.get("solution"),
            solution_objective=float(summary["solution_objective"]),
        )
