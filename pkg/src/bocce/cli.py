"""Command-line entry point: ``bocce <command> [flags]``."""
from __future__ import annotations

import argparse
import csv
import os
import sys
from fractions import Fraction

from . import checks, montecarlo
from .exact import Kind, Scenario, p_exact, regions, scenario_probability
from .games import solve_game
from .lp import parse_mode
from .montecarlo import LEVELS, CSV_FIELDS, ExperimentConfig
from .sampler import parse_distribution

SEED_ENV = "BOCCE_SEED"


class UsageError(Exception):
    pass


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return repr(float(x))


def _decimal(p) -> str:
    # repr gives the shortest round-tripping form, always with a dot
    return repr(float(p))


def cmd_exact(args, out):
    p = p_exact(args.n, args.d)
    print(f"{p.numerator}/{p.denominator} = {_decimal(p)}", file=out)


def cmd_regions(args, out):
    if args.n < 1 or args.d < 1:
        raise UsageError("regions needs --n >= 1 and --d >= 1")
    print(regions(args.n, args.d), file=out)


def _scenario(args) -> Scenario:
    kind = Kind(args.scenario)
    dims = {k: getattr(args, k) for k in ("n", "d", "m") if getattr(args, k) is not None}
    return Scenario.from_dims(kind, **dims)


def cmd_simulate(args, out):
    seed = args.seed
    if seed is None:
        env = os.environ.get(SEED_ENV)
        try:
            seed = int(env) if env else 0
        except ValueError:
            raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}")
    fixed = None
    if args.fixed is not None:
        fixed = tuple(float(v) for v in args.fixed.split(","))
    cfg = ExperimentConfig(
        scenario=_scenario(args),
        trials=args.trials,
        master_seed=seed,
        dist=parse_distribution(args.dist),
        mode=parse_mode(args.mode),
        confidence_level=args.level,
        fixed_first=fixed,
        random_b=args.random_b,
    )
    report = montecarlo.estimate(cfg, workers=args.workers)
    if args.csv:
        print(",".join(CSV_FIELDS), file=out)
        print(report.csv_row(), file=out)
    else:
        print(report.to_json(), file=out)


def read_matrix(path):
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    try:
        A = [[Fraction(c.strip()) for c in r] for r in rows]
    except ValueError as e:
        raise UsageError(f"{path}: {e}")
    if not A or len({len(r) for r in A}) != 1:
        raise UsageError(f"{path}: expected a non-empty rectangular matrix")
    return A


def cmd_game(args, out):
    mode = parse_mode(args.mode)
    A = read_matrix(args.matrix)
    if str(mode) != "rational":
        A = [[float(v) for v in r] for r in A]
    sol = solve_game(A, mode)
    print(f"value: {_fmt(sol.value)}", file=out)
    print("row strategy: " + " ".join(_fmt(v) for v in sol.row_strategy), file=out)
    print("column strategy: " + " ".join(_fmt(v) for v in sol.col_strategy), file=out)
    verdict = "row player" if sol.value > 0 else "column player" if sol.value < 0 else "neither"
    print(f"favors: {verdict}", file=out)


def cmd_verify(args, out):
    if args.full:
        results = checks.full_suite(seed=args.seed, workers=args.workers)
    else:
        results = checks.quick_suite(seed=args.seed)
    for r in results:
        print(r.line(), file=out)
    failed = [r.name for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed", file=out)
    return 1 if failed else 0


def _write_csv(out, header, rows):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def cmd_table1(args, out):
    rows = []
    for n, p, rounded, printed, note in checks.table1_rows():
        rows.append([n, f"{float(rounded):.3f}", str(p), printed, note])
    _write_csv(out, ["n", "p(n,3)", "exact", "printed", "note"], rows)


def cmd_figure2(args, out):
    rows = [[m, _decimal(p_exact(args.n, m)), str(p_exact(args.n, m))] for m in range(0, args.n + 1)]
    _write_csv(out, ["m", f"p({args.n},m)", "exact"], rows)


def figure3_rows(m_min, m_max):
    rows = []
    for m in range(m_min, m_max + 1):
        p = scenario_probability(Scenario.game(m, 2 * m))
        rows.append((m, 2 * m, p))
    return rows


def svg_line_plot(xs, ys, title="", width=480, height=320, pad=40) -> str:
    """A bare-bones SVG polyline with axis lines and end labels."""
    x0, x1 = min(xs), max(xs)
    y0, y1 = 0.0, max(1e-12, max(ys))
    def sx(x):
        return pad + (x - x0) / ((x1 - x0) or 1) * (width - 2 * pad)
    def sy(y):
        return height - pad - (y - y0) / (y1 - y0) * (height - 2 * pad)
    pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys))
    return "\n".join([
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<text x="{width / 2}" y="{pad / 2}" text-anchor="middle">{title}</text>',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
        f'<text x="{pad}" y="{height - pad / 3}">{x0}</text>',
        f'<text x="{width - pad}" y="{height - pad / 3}">{x1}</text>',
        f'<text x="2" y="{pad}">{y1:.3g}</text>',
        f'<polyline fill="none" stroke="steelblue" stroke-width="2" points="{pts}"/>',
        "</svg>",
        "",
    ])


def cmd_figure3(args, out):
    if not 1 <= args.m_min <= args.m_max:
        raise UsageError("figure3 needs 1 <= --m-min <= --m-max")
    rows = figure3_rows(args.m_min, args.m_max)
    _write_csv(out, ["m", "n", "p(m+n,m)", "exact"], [[m, n, _decimal(p), str(p)] for m, n, p in rows])
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(svg_line_plot([m for m, _, _ in rows], [float(p) for *_, p in rows],
                                   title="row player favored, n = 2m"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bocce", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("exact", help="exact probability p(n,d)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(run=cmd_exact)

    p = sub.add_parser("regions", help="number of regions r(n,d)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(run=cmd_regions)

    p = sub.add_parser("simulate", help="Monte Carlo estimate for a scenario")
    p.add_argument("--scenario", required=True, choices=[k.value for k in Kind])
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, help=f"master seed (default: ${SEED_ENV} or 0)")
    p.add_argument("--dist", default="normal", help="normal | cube:<c> | sphere")
    p.add_argument("--mode", default="float", help="float | float:<eps> | rational")
    p.add_argument("--level", type=float, default=0.999, choices=LEVELS)
    p.add_argument("--random-b", action="store_true", help="inhomogeneous: draw b at random")
    p.add_argument("--fixed", help="bocce-fixed-first: first point, e.g. 1,0")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv", action="store_true", help="CSV instead of JSON")
    p.set_defaults(run=cmd_simulate)

    p = sub.add_parser("game", help="solve a matrix game read from CSV")
    p.add_argument("--matrix", required=True)
    p.add_argument("--mode", default="rational")
    p.set_defaults(run=cmd_game)

    p = sub.add_parser("verify", help="run the consistency checks")
    p.add_argument("--full", action="store_true", help="acceptance sizes (slow)")
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("table1", help="CSV of p(n,3) for n = 1..13")
    p.set_defaults(run=cmd_table1)

    p = sub.add_parser("figure2", help="CSV of p(100,m) for m = 0..100")
    p.add_argument("--n", type=int, default=100)
    p.set_defaults(run=cmd_figure2)

    p = sub.add_parser("figure3", help="CSV of p(3m,m), the favored-row probability with n = 2m")
    p.add_argument("--m-min", type=int, default=1)
    p.add_argument("--m-max", type=int, default=12)
    p.add_argument("--svg", help="also write a line plot to this path")
    p.set_defaults(run=cmd_figure3)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        code = args.run(args, out)
    except (UsageError, ValueError, OSError) as e:
        parser.print_usage(sys.stderr)
        print(f"bocce {args.command}: error: {e}", file=sys.stderr)
        return 2
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
