"""Evaluator selection by design kind."""

from gan_duf.config.constants import CONSTANTS
from gan_duf.dataset.sources import check_kind
from gan_duf.objectives.airfoil import AirfoilProxy
from gan_duf.objectives.base import ObjectiveEvaluator
from gan_duf.objectives.external import ExternalCommandEvaluator
from gan_duf.objectives.metasurface import MetasurfaceProxy


def make_evaluator(
    kind: str,
    command: str | list[str] | None = None,
    n_f: int = CONSTANTS.N_FREQUENCIES,
    max_processes: int = 1,
    timeout: float | None = 600.0,
) -> ObjectiveEvaluator:
    """The proxy for ``kind``, or an external command evaluator when ``command`` is set."""
    check_kind(kind)
    if command:
        return ExternalCommandEvaluator(command, kind, timeout, max_processes)
    if kind == "airfoil":
        return AirfoilProxy()
    return MetasurfaceProxy(n_f)
