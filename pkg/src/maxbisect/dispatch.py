"""Method selection shared by the CLI and the sweep harness."""

from __future__ import annotations

from typing import Callable

from .errors import PreconditionError
from .graph import WeightedMultigraph
from .report import SolverReport
from .subcubic import solve_chromatic, solve_subcubic
from .trianglefree import solve_triangle_free

METHODS: dict[str, Callable[[WeightedMultigraph, int | None], SolverReport]] = {
    "chi": solve_chromatic,
    "subcubic": solve_subcubic,
    "tf": solve_triangle_free,
}


def solve(g: WeightedMultigraph, method: str = "auto", seed: int | None = 0) -> SolverReport:
    """Run one method, or with ``auto`` every method whose preconditions hold
    and keep the heaviest bisection (ties prefer the larger guaranteed bound,
    then the order of ``METHODS``)."""
    if method != "auto":
        if method not in METHODS:
            raise ValueError(f"unknown method {method!r}")
        return METHODS[method](g, seed)
    best: SolverReport | None = None
    last_error: PreconditionError | None = None
    for solver in METHODS.values():
        try:
            report = solver(g, seed)
        except PreconditionError as exc:
            last_error = exc
            continue
        if best is None or (report.achieved, report.guaranteed_bound) > (best.achieved, best.guaranteed_bound):
            best = report
    if best is None:
        assert last_error is not None
        raise last_error
    best.flags["selected_by"] = "auto"
    return best
