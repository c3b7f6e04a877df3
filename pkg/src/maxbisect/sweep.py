"""Bound sweeps over random or exhaustively enumerated instances.

Each instance is compared against ``bound * w(G)``. Small instances use the
exact oracle, larger ones the best solver output, so a violation on a large
instance flags a solver shortfall rather than a counterexample.
"""

from __future__ import annotations

import json
import random
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Any, Iterator

from .dispatch import solve
from .enumeration import connected_cubic, connected_subcubic
from .generators import generate
from .graph import WeightedMultigraph, format_graph, format_rational, has_bridge, parse_graph, total_weight
from .oracle import exact_max_bisection
from .trianglefree import THETA, is_claw

EXACT_LIMIT = 14

_NAMED_BOUNDS = {
    "two-thirds": Fraction(2, 3),
    "theta": THETA,
    "eleven-fifteenths": Fraction(11, 15),
}

EXHAUSTIVE_CLASSES = {
    "subcubic": lambda n: connected_subcubic(n),
    "tf-subcubic": lambda n: connected_subcubic(n, triangle_free=True),
    "tf-subcubic-2ecc": lambda n: [g for g in connected_subcubic(n, True) if g.m and not has_bridge(g)],
    "cubic": connected_cubic,
    "cubic-bridgeless": lambda n: [g for g in connected_cubic(n) if not has_bridge(g)],
}


def bound_fraction(name: str) -> Fraction:
    """``max-degree(k)`` is ``(k + 1) / (2k)``; the other names are constants."""
    if name in _NAMED_BOUNDS:
        return _NAMED_BOUNDS[name]
    match = re.fullmatch(r"max-degree\((\d+)\)", name)
    if match and int(match.group(1)) > 0:
        k = int(match.group(1))
        return Fraction(k + 1, 2 * k)
    raise ValueError(f"unknown bound {name!r}")


@dataclass(frozen=True)
class SweepConfig:
    cls: str
    n_min: int
    n_max: int
    samples: int
    bound: str
    seed: int = 0
    weights: str = "unit"
    exhaustive: bool = False


def _sample_order(cls: str, rng: random.Random, n_min: int, n_max: int) -> int:
    lo = n_min
    if cls in ("cubic-bridgeless", "tf-subcubic-2ecc"):
        lo = max(lo, 4)
    candidates = [n for n in range(lo, n_max + 1) if cls != "cubic-bridgeless" or n % 2 == 0]
    if not candidates:
        raise ValueError(f"no admissible order for {cls} in [{n_min}, {n_max}]")
    return rng.choice(candidates)


def instances(cfg: SweepConfig) -> Iterator[tuple[int, WeightedMultigraph, int]]:
    """Yield ``(index, graph, solver_seed)`` in index order."""
    if cfg.exhaustive:
        if cfg.cls not in EXHAUSTIVE_CLASSES:
            raise ValueError(f"no exhaustive enumeration for class {cfg.cls!r}")
        index = 0
        for n in range(max(cfg.n_min, 1), cfg.n_max + 1):
            for g in EXHAUSTIVE_CLASSES[cfg.cls](n):
                yield index, g, cfg.seed
                index += 1
        return
    for index in range(cfg.samples):
        rng = random.Random(f"{cfg.seed}:{index}")
        n = _sample_order(cfg.cls, rng, cfg.n_min, cfg.n_max)
        inst_seed = rng.getrandbits(32)
        yield index, generate(cfg.cls, n, inst_seed, cfg.weights), inst_seed


def evaluate(index: int, text: str, bound: Fraction, bound_name: str, seed: int) -> dict[str, Any]:
    g = parse_graph(text)
    w = total_weight(g)
    if g.n <= EXACT_LIMIT:
        value, source = exact_max_bisection(g)[0], "oracle"
    else:
        value, source = solve(g, "auto", seed).achieved, "solver"
    status = "ok"
    if value < bound * w:
        status = "exempt" if bound_name == "eleven-fifteenths" and is_claw(g) else "violation"
    entry: dict[str, Any] = {
        "index": index,
        "n": g.n,
        "m": g.m,
        "total_weight": format_rational(w),
        "value": format_rational(value),
        "ratio": format_rational(value / w) if w else None,
        "source": source,
        "status": status,
    }
    if status != "ok":
        entry["instance"] = text
    return entry


def _evaluate_packed(args: tuple) -> dict[str, Any]:
    return evaluate(*args)


def sweep(cfg: SweepConfig, jobs: int = 1) -> dict[str, Any]:
    start = time.perf_counter()
    bound = bound_fraction(cfg.bound)
    work = [(i, format_graph(g), bound, cfg.bound, s) for i, g, s in instances(cfg)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(_evaluate_packed, work, chunksize=16))
    else:
        entries = [evaluate(*args) for args in work]
    entries.sort(key=lambda e: e["index"])
    ratios = [(Fraction(e["ratio"]), e["index"]) for e in entries if e["ratio"] is not None and e["status"] != "exempt"]
    tightest = min(ratios) if ratios else None
    return {
        "config": asdict(cfg),
        "bound_value": format_rational(bound),
        "count": len(entries),
        "violations": [e for e in entries if e["status"] == "violation"],
        "exempt": [e for e in entries if e["status"] == "exempt"],
        "min_ratio": None if tightest is None else {"ratio": format_rational(tightest[0]), "index": tightest[1]},
        "instances": entries,
        "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
    }


def report_json(report: dict[str, Any], include_elapsed: bool = True) -> str:
    data = dict(report)
    if not include_elapsed:
        data.pop("elapsed_ms", None)
    return json.dumps(data, sort_keys=True, indent=2)
