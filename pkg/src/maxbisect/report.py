from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .families import Bisection
from .graph import format_rational


@dataclass
class SolverReport:
    input_digest: str
    method: str
    guaranteed_bound: Fraction
    achieved: Fraction
    side_x: tuple[int, ...]
    flags: dict[str, Any] = field(default_factory=dict)
    seed: int | None = None
    elapsed_ms: float = 0.0
    bisection: Bisection | None = field(default=None, repr=False, compare=False)

    @property
    def meets_bound(self) -> bool:
        return self.achieved >= self.guaranteed_bound

    def to_dict(self) -> dict[str, Any]:
        return {
            "input_digest": self.input_digest,
            "method": self.method,
            "guaranteed_bound": format_rational(self.guaranteed_bound),
            "achieved": format_rational(self.achieved),
            "side_x": [int(v) for v in self.side_x],
            "flags": self.flags,
            "seed": self.seed,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def parse_rational(text: str) -> Fraction:
    return Fraction(text)
