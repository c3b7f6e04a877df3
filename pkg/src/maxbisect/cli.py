"""Command-line entry point.

Exit codes: 0 on success, 2 when a result fails its own guarantee (a bug),
3 when the input violates a precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .audit import run_audit
from .dispatch import solve
from .errors import GuaranteeViolation, InitializationExhausted, PreconditionError, RejectionBudgetExceeded
from .generators import CLASSES, generate
from .graph import format_graph, format_rational, format_weight, read_graph, write_graph
from .oracle import exact_max_bisection, exact_max_cut, verify_bisection
from .sweep import EXHAUSTIVE_CLASSES, SweepConfig, report_json, sweep

EXIT_OK, EXIT_GUARANTEE, EXIT_PRECONDITION = 0, 2, 3


def _cmd_solve(args: argparse.Namespace) -> int:
    g = read_graph(args.input)
    report = solve(g, args.method, args.seed)
    verdict = verify_bisection(g, report.bisection, report.guaranteed_bound)
    if not verdict:
        raise GuaranteeViolation("; ".join(verdict.reasons))
    if args.json:
        print(report.to_json())
    else:
        print(f"method    {report.method}")
        print(f"achieved  {format_weight(report.achieved)}")
        print(f"bound     {format_weight(report.guaranteed_bound)}")
        print(f"side_x    {' '.join(str(v) for v in report.side_x)}")
        for key, value in sorted(report.flags.items()):
            print(f"{key:<9} {value}")
    return EXIT_OK


def _cmd_oracle(args: argparse.Namespace) -> int:
    g = read_graph(args.input)
    if args.cut:
        weight, side = exact_max_cut(g)
    else:
        weight, b = exact_max_bisection(g)
        side = b.side_x
    print(format_weight(weight))
    print("side_x " + " ".join(str(v) for v in sorted(side)))
    return EXIT_OK


def _cmd_audit(args: argparse.Namespace) -> int:
    cases = run_audit(args.family, args.max_len)
    failed = [c for c in cases if not c.report.ok]
    if args.json:
        print(json.dumps({
            "family": args.family,
            "max_len": args.max_len,
            "hosts": len(cases),
            "tables": sorted({c.dist.table for c in cases}),
            "violations": {c.label: c.report.violations for c in failed},
        }, sort_keys=True, indent=2))
    else:
        for c in cases:
            if args.verbose or not c.report.ok:
                low_edge = min(c.report.edge_inclusion.values(), default=None)
                status = "ok" if c.report.ok else "FAIL"
                print(f"{status:<4} {c.label:<24} {c.dist.table:<24} min edge {format_rational(low_edge) if low_edge is not None else '-'}")
                for v in c.report.violations:
                    print(f"     {v}")
        print(f"audited {len(cases)} hosts, {sum(len(c.report.violations) for c in failed)} violations")
    return EXIT_GUARANTEE if failed else EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    cfg = SweepConfig(
        cls=args.cls,
        n_min=args.n_min,
        n_max=args.n_max,
        samples=args.samples,
        bound=args.bound,
        seed=args.seed,
        weights=args.weights,
        exhaustive=args.exhaustive,
    )
    report = sweep(cfg, jobs=args.jobs)
    text = report_json(report)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    print(
        f"{report['count']} instances, {len(report['violations'])} violations, "
        f"{len(report['exempt'])} exempt, min ratio {report['min_ratio']['ratio'] if report['min_ratio'] else '-'}",
        file=sys.stderr,
    )
    return EXIT_OK


def _cmd_gen(args: argparse.Namespace) -> int:
    g = generate(args.cls, args.n, args.seed, args.weights)
    comments = [f"class {args.cls} n {args.n} seed {args.seed} weights {args.weights}"]
    if args.out:
        write_graph(g, args.out, comments)
    else:
        sys.stdout.write(format_graph(g, comments))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maxbisect", description="Large bisections of bounded-degree graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute a bisection with a guaranteed weight")
    p.add_argument("--method", choices=["auto", "chi", "subcubic", "tf"], default="auto")
    p.add_argument("--input", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("oracle", help="exact maximum bisection (or cut) by enumeration")
    p.add_argument("--input", required=True)
    p.add_argument("--cut", action="store_true", help="maximum cut instead of maximum bisection")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("audit", help="exhaustively audit the gadget distributions")
    p.add_argument("--family", choices=["cycles", "paths"], required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--verbose", action="store_true", help="one line per host, not just failures")
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("sweep", help="compare exact or solver values against a bound")
    p.add_argument("--class", dest="cls", required=True, choices=sorted(set(CLASSES) | set(EXHAUSTIVE_CLASSES)))
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--bound", required=True, help="max-degree(k), two-thirds, theta or eleven-fifteenths")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weights", choices=["unit", "rational"], default="unit")
    p.add_argument("--exhaustive", action="store_true", help="all connected graphs of the class instead of samples")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("gen", help="write a generated instance")
    p.add_argument("--class", dest="cls", required=True, choices=CLASSES)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--weights", choices=["unit", "rational"], default="unit")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GuaranteeViolation, InitializationExhausted) as exc:
        print(f"guarantee violation: {exc}", file=sys.stderr)
        return EXIT_GUARANTEE
    except (PreconditionError, RejectionBudgetExceeded, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
