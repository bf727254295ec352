"""Evaluator that delegates to a user command (for real solvers).

Protocol: the design is written to a temporary file in the binary array
format, the command is run with that path appended as its last argument, and
the first line of its stdout is parsed as one real number. A non-zero exit
code, a timeout or unparsable output marks the design infeasible.
"""

from __future__ import annotations

import logging
import os
import shlex
import subprocess
import tempfile
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Any

from gan_duf.autodiff.tensor import Array
from gan_duf.dataset.arrayio import write_array
from gan_duf.errors import ConfigError
from gan_duf.objectives.base import INFEASIBLE

logger = logging.getLogger(__name__)


class ExternalCommandEvaluator:
    """Runs ``command <design.bin>`` and reads the objective from stdout.

    At most ``max_processes`` commands run at the same time, whatever the
    number of calling threads.
    """

    name = "external_command"

    def __init__(
        self,
        command: str | list[str],
        kind: str,
        timeout: float | None = 600.0,
        max_processes: int = 1,
    ):
        self.command = shlex.split(command) if isinstance(command, str) else list(command)
        if not self.command:
            raise ConfigError("external evaluator needs a non-empty command")
        if max_processes < 1:
            raise ConfigError(f"max_processes must be >= 1, got {max_processes}")
        self.kind = kind
        self.timeout = timeout
        self.max_processes = max_processes
        self._slots = threading.BoundedSemaphore(max_processes)

    def __call__(self, design: Array) -> float:
        with self._slots, tempfile.TemporaryDirectory(prefix="gan_duf_eval_") as tmpdir:
            path = os.path.join(tmpdir, "design.bin")
            write_array(path, design)
            try:
                result = subprocess.run(
                    [*self.command, path],
                    capture_output=True,
                    text=True,
                    timeout=self.timeout,
                    check=False,
                )
            except FileNotFoundError:
                raise ConfigError(f"evaluator command not found: {self.command[0]}") from None
            except subprocess.TimeoutExpired:
                logger.warning(f"Evaluator timed out after {self.timeout}s; marking infeasible")
                return INFEASIBLE
        return self._parse(result)

    def _parse(self, result: subprocess.CompletedProcess[str]) -> float:
        if result.returncode != 0:
            logger.warning(
                f"Evaluator exited with code {result.returncode}; marking infeasible "
                f"({result.stderr.strip()[:200]})"
            )
            return INFEASIBLE
        lines = result.stdout.strip().splitlines()
        try:
            return float(lines[0])
        except (IndexError, ValueError):
            logger.warning(f"Evaluator output is not a number: {result.stdout[:200]!r}")
            return INFEASIBLE

    def map(self, designs: list[Array]) -> list[float]:
        """Evaluate ``designs`` concurrently; results keep the input order."""
        if self.max_processes == 1 or len(designs) < 2:
            return [self(d) for d in designs]
        with ThreadPoolExecutor(max_workers=self.max_processes) as pool:
            return list(pool.map(self, designs))

    def describe(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "command": self.command,
            "timeout": self.timeout,
            "max_processes": self.max_processes,
        }
