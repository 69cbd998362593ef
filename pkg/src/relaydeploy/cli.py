"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 infeasible plan, 3 I/O error,
4 published-statistics mismatch (``verify-paper-stats`` only).
"""
from __future__ import annotations

import argparse
import logging
import sys
import warnings
from pathlib import Path

from . import harness
from .config import load_plan, parse_layout
from .deployment import mst_backbone
from .errors import ConfigurationError, RelayDeployError
from .reference_tables import DEFAULT_TOLERANCE, KNOWN_INCONSISTENT, compare_published

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_IO, EXIT_MISMATCH = 0, 1, 2, 3, 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _out_dir(arg) -> Path:
    return Path(arg) if arg else harness.output_dir()


def cmd_run(args) -> int:
    overrides = {}
    if args.workers is not None:
        overrides["workers"] = args.workers
    if args.base_seed is not None:
        overrides["base_seed"] = args.base_seed
    if args.record_wall_time:
        overrides["record_wall_time"] = True
    plan = load_plan(args.plan_file, **overrides)
    if args.paper_scale:
        warnings.warn(
            "paper-scale plan: sizes 20..60, population 20 x N, 200 generations; "
            "expect hours of runtime",
            RuntimeWarning,
            stacklevel=1,
        )
        plan = harness.paper_scale_plan(**{
            k: getattr(plan, k) for k in (
                "repetitions", "traffic_levels", "optimizer_kinds", "base_seed",
                "report_traffic", "n_candidates", "penalty_beta", "lambda2_floor",
                "lambda2_max", "delta_mu", "significance", "record_wall_time", "workers",
                "grid", "layout", "energy", "de", "gsa", "abc",
            )
        })
    record = harness.run_plan(plan)
    out = _out_dir(args.out)
    for p in harness.write_outputs(record, out):
        print(p)
    bad = record.band_violations()
    print(
        f"{len(record.rows)} rows, {len(record.errors)} failed cells, "
        f"{len(bad)} outside lambda2 band {harness.LAMBDA2_BAND}"
    )
    if not record.rows:
        return EXIT_INFEASIBLE
    return EXIT_OK


def cmd_summarize(args) -> int:
    rows = harness.read_csv(args.rows_csv)
    summaries = harness.summarize(rows, reference=args.reference, test=args.test)
    if args.out:
        harness.emit_summary_csv(summaries, args.out, args.test)
        print(args.out)
        return EXIT_OK
    print(f"{'N':>4} {'opt':<4} {'metric':<8} {'mean':>12} {'std':>10} {'p':>10}")
    for s in summaries:
        for m in harness.METRICS:
            p = "-" if s.p_value[m] is None else f"{s.p_value[m]:.4g}"
            print(f"{s.network_size:>4} {s.optimizer:<4} {m:<8} {s.mean[m]:>12.4f} {s.std[m]:>10.4f} {p:>10}")
    return EXIT_OK


def _read_keyed(path, value_col: str):
    import csv

    out: dict = {}
    axis: dict = {}
    with open(path, encoding="utf-8", newline="") as fh:
        for rec in csv.DictReader(fh):
            key = (int(rec["network_size"]), rec["optimizer"], int(rec["repetition"]))
            out.setdefault(key, []).append(float(rec[value_col]))
            if "traffic" in rec:
                axis[float(rec["traffic"])] = None
    return out, tuple(axis)


def cmd_plot(args) -> int:
    rows = harness.read_csv(args.rows_csv)
    base = Path(args.rows_csv).parent
    traces = load = levels = None
    if args.kind == "convergence":
        path = Path(args.traces) if args.traces else base / "traces.csv"
        if path.exists():
            traces, _ = _read_keyed(path, "best_fitness")
    elif args.kind == "lifetime_vs_load":
        path = Path(args.load) if args.load else base / "load_sweep.csv"
        if path.exists():
            load, levels = _read_keyed(path, "t_r")
    out = Path(args.out) if args.out else _out_dir(None) / f"{args.kind}.dat"
    harness.emit_plot_data(rows, args.kind, out, traces, load, levels)
    print(out)
    return EXIT_OK


def cmd_verify(args) -> int:
    cells = compare_published(args.tolerance)
    failed = [c for c in cells if not c[-1]]
    for key, m, s, pm, ps, ok in cells:
        if args.verbose or not ok:
            n, opt, metric = key
            tag = "ok" if ok else "MISMATCH"
            note = " (known inconsistent cell)" if not ok and key in KNOWN_INCONSISTENT else ""
            print(f"{tag:<8} N={n} {opt:<3} {metric:<7} computed {m:.4f} +- {s:.4f}"
                  f" printed {pm:.4f} +- {ps:.4f}{note}")
    print(f"{len(cells) - len(failed)}/{len(cells)} cells reproduced within {args.tolerance:g}")
    return EXIT_OK if not failed else EXIT_MISMATCH


def cmd_backbone(args) -> int:
    grid, layout = parse_layout(Path(args.layout_file).read_text(encoding="utf-8"))
    layout.validate(grid)
    bb = mst_backbone(layout, grid)
    sys.stdout.write(bb.dump())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="relaydeploy", description="Two-phase relay deployment experiments.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    r = sub.add_parser("run", help="run an experiment plan")
    r.add_argument("plan_file")
    r.add_argument("--out", help="output directory (default: $RELAYDEPLOY_OUTPUT_DIR or .)")
    r.add_argument("--paper-scale", action="store_true", help="sizes 20..60 at full population")
    r.add_argument("--workers", type=int)
    r.add_argument("--base-seed", type=int)
    r.add_argument("--record-wall-time", action="store_true")
    r.set_defaults(func=cmd_run)

    s = sub.add_parser("summarize", help="mean, STD and p-values of a rows CSV")
    s.add_argument("rows_csv")
    s.add_argument("--reference", default="DE")
    s.add_argument("--test", choices=("welch", "mannwhitney"), default="welch")
    s.add_argument("--out")
    s.set_defaults(func=cmd_summarize)

    pl = sub.add_parser("plot", help="write plot-ready series")
    pl.add_argument("rows_csv")
    pl.add_argument("--kind", required=True, choices=harness.PLOT_KINDS)
    pl.add_argument("--traces", help="traces CSV (default: next to rows CSV)")
    pl.add_argument("--load", help="load-sweep CSV (default: next to rows CSV)")
    pl.add_argument("--out")
    pl.set_defaults(func=cmd_plot)

    v = sub.add_parser("verify-paper-stats", help="recompute published mean and STD cells")
    v.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("backbone", help="print the first-phase backbone of a layout file")
    b.add_argument("layout_file")
    b.set_defaults(func=cmd_backbone)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise _UsageError("relaydeploy: a subcommand is required")
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except RelayDeployError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
