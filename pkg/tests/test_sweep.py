from __future__ import annotations

from fractions import Fraction

import pytest

from maxbisect.dispatch import solve
from maxbisect.generators import generate
from maxbisect.sweep import SweepConfig, bound_fraction, report_json, sweep


def test_bound_names():
    assert bound_fraction("max-degree(3)") == Fraction(2, 3)
    assert bound_fraction("max-degree(5)") == Fraction(3, 5)
    assert bound_fraction("two-thirds") == Fraction(2, 3)
    assert bound_fraction("theta") == Fraction(613, 855)
    assert bound_fraction("eleven-fifteenths") == Fraction(11, 15)
    with pytest.raises(ValueError):
        bound_fraction("max-degree(0)")


def test_sweeps_are_reproducible():
    cfg = SweepConfig("tf-subcubic-2ecc", 4, 12, 12, "eleven-fifteenths", seed=5, weights="rational")
    a = report_json(sweep(cfg), include_elapsed=False)
    b = report_json(sweep(cfg), include_elapsed=False)
    c = report_json(sweep(cfg, jobs=2), include_elapsed=False)
    assert a == b == c


def test_solver_fallback_above_the_exact_limit():
    cfg = SweepConfig("cubic-bridgeless", 16, 18, 3, "two-thirds", seed=1)
    report = sweep(cfg)
    assert {e["source"] for e in report["instances"]} == {"solver"}
    assert not report["violations"]


def test_petersen_is_tight_for_eleven_fifteenths():
    report = sweep(SweepConfig("petersen", 10, 10, 1, "eleven-fifteenths"))
    assert report["min_ratio"]["ratio"] == "11/15"
    assert not report["violations"]


def test_claw_is_exempt_and_violations_carry_the_instance():
    report = sweep(SweepConfig("claw", 4, 4, 1, "eleven-fifteenths"))
    assert len(report["exempt"]) == 1 and not report["violations"]
    report = sweep(SweepConfig("claw", 4, 4, 1, "theta"))
    (bad,) = report["violations"]
    assert bad["instance"].startswith("p bisect 4 3")


def test_exhaustive_mode_small():
    report = sweep(SweepConfig("cubic", 1, 8, 0, "max-degree(3)", exhaustive=True))
    assert report["count"] == 1 + 2 + 5
    assert not report["violations"]


def test_auto_picks_the_heaviest_report():
    g = generate("petersen", 0)
    best = solve(g, "auto")
    for method in ("chi", "subcubic", "tf"):
        assert best.achieved >= solve(g, method).achieved
    assert best.flags["selected_by"] == "auto"
