"""Seeded experiment runs, summary statistics and CSV / plot-data emission.

One *cell* is a (network size, optimizer, repetition) triple. Every cell has
its own seed derived from the plan's base seed, so cells can run in any order
or in parallel without changing the output bytes.
"""
from __future__ import annotations

import csv
import hashlib
import io
import logging
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy import stats

from .deployment import GridSpec, SeedLayout, enumerate_candidates, mst_backbone
from .energy import EnergyParams, lifetime_report, relay_multipliers
from .errors import ConfigurationError, DomainError, RelayDeployError
from .graph_core import average_distance, spectral_summary, wiener_spectral
from .objective import ObjectiveContext, evaluate
from .optimizers import KINDS, ABCParams, DEParams, GSAParams, OptimizerConfig, optimize

log = logging.getLogger(__name__)

CSV_HEADER = (
    "optimizer", "network_size", "repetition", "seed",
    "wiener", "mu", "e_p", "t_r", "lambda2", "wall_time_ms",
)
METRICS = ("wiener", "mu", "e_p", "t_r", "lambda2")
PLOT_KINDS = ("lifetime_vs_size", "connectivity_vs_size", "convergence", "lifetime_vs_load")
LAMBDA2_BAND = (0.5, 0.6)
N_CH = 9

DEFAULT_GRID = GridSpec((10, 10, 3), 100.0, 100.0 * math.sqrt(2.0))
DEFAULT_LAYOUT = SeedLayout(
    (4, 4, 0),
    (
        (3, 3, 0), (5, 5, 0), (3, 5, 1), (5, 3, 1), (4, 4, 2),
        (2, 4, 0), (6, 4, 0), (4, 2, 2), (4, 6, 2),
    ),
)


@dataclass(frozen=True)
class ExperimentPlan:
    """What to run. Defaults give the desk-scale plan."""

    network_sizes: tuple = (20, 30)
    repetitions: int = 8
    traffic_levels: tuple = (30, 100, 300, 600)
    optimizer_kinds: tuple = KINDS
    base_seed: int = 0
    scale_factor: float = 1.0
    generations: int = 50
    population_per_node: int = 10
    report_traffic: float = 30
    n_candidates: int = 110
    penalty_beta: float = 1.0
    lambda2_floor: float = 0.5
    lambda2_max: float | None = 0.6
    delta_mu: float = 0.1
    significance: str = "welch"
    record_wall_time: bool = False
    workers: int = 1
    grid: GridSpec = DEFAULT_GRID
    layout: SeedLayout = DEFAULT_LAYOUT
    energy: EnergyParams = field(default_factory=EnergyParams)
    de: DEParams = field(default_factory=DEParams)
    gsa: GSAParams = field(default_factory=GSAParams)
    abc: ABCParams = field(default_factory=ABCParams)

    def __post_init__(self) -> None:
        object.__setattr__(self, "network_sizes", tuple(int(n) for n in self.network_sizes))
        object.__setattr__(self, "traffic_levels", tuple(float(t) for t in self.traffic_levels))
        object.__setattr__(
            self, "optimizer_kinds", tuple(k.upper() for k in self.optimizer_kinds)
        )
        if not self.network_sizes:
            raise ConfigurationError("plan needs at least one network size")
        if min(self.network_sizes) < 1 + N_CH + 1:
            raise ConfigurationError("network sizes must be >= 11 (BS + 9 CHs + 1 relay)")
        if self.repetitions < 2:
            raise ConfigurationError("repetitions must be >= 2 for statistics")
        if not self.optimizer_kinds or set(self.optimizer_kinds) - set(KINDS):
            raise ConfigurationError(f"optimizer_kinds must be a subset of {KINDS}")
        if not 0 < self.scale_factor <= 1:
            raise ConfigurationError("scale_factor must lie in (0, 1]")
        if self.generations < 1 or self.population_per_node < 1:
            raise ConfigurationError("generations and population_per_node must be positive")
        if any(t <= 0 for t in self.traffic_levels) or self.report_traffic <= 0:
            raise ConfigurationError("traffic levels must be positive")
        if self.significance not in ("welch", "mannwhitney"):
            raise ConfigurationError("significance must be 'welch' or 'mannwhitney'")
        if self.workers < 1:
            raise ConfigurationError("workers must be >= 1")
        if len(self.layout.chs) != N_CH:
            raise ConfigurationError(f"layout must place exactly {N_CH} cluster heads")

    @property
    def effective_generations(self) -> int:
        return max(1, round(self.generations * self.scale_factor))

    def population(self, size: int) -> int:
        return max(4, round(self.population_per_node * size * self.scale_factor))

    def cells(self) -> list:
        return [
            (n, k, r)
            for n in self.network_sizes
            for k in self.optimizer_kinds
            for r in range(self.repetitions)
        ]


def paper_scale_plan(**overrides) -> ExperimentPlan:
    """Sizes 20..60, population 20 x N, 200 generations."""
    base = dict(network_sizes=(20, 30, 40, 50, 60), generations=200, population_per_node=20)
    base.update(overrides)
    return ExperimentPlan(**base)


def cell_seed(base_seed: int, size: int, kind: str, rep: int) -> int:
    """``base_seed`` XOR a stable 63-bit hash of the cell coordinates."""
    digest = hashlib.blake2b(f"{size}|{kind}|{rep}".encode(), digest_size=8).digest()
    return (int(base_seed) ^ int.from_bytes(digest, "big")) & (2**63 - 1)


@dataclass(frozen=True)
class ResultRow:
    optimizer: str
    network_size: int
    repetition: int
    seed: int
    wiener: float
    mu: float
    e_p: float
    t_r: float
    lambda2: float
    wall_time_ms: float | None = None

    def as_csv(self) -> list:
        return [
            self.optimizer, str(self.network_size), str(self.repetition), str(self.seed),
            *(repr(float(getattr(self, m))) for m in METRICS),
            "" if self.wall_time_ms is None else repr(float(self.wall_time_ms)),
        ]


@dataclass(frozen=True)
class CellError:
    optimizer: str
    network_size: int
    repetition: int
    seed: int
    message: str


@dataclass
class RunRecord:
    """Everything one plan execution produced, in deterministic cell order."""

    plan: ExperimentPlan
    rows: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    traces: dict = field(default_factory=dict)  # (size, kind, rep) -> best-so-far list
    load: dict = field(default_factory=dict)  # (size, kind, rep) -> T_R per traffic level

    def band_violations(self, band: tuple = LAMBDA2_BAND) -> list:
        lo, hi = band
        return [r for r in self.rows if not lo <= r.lambda2 <= hi]


# ---------------------------------------------------------------------------
# one cell
# ---------------------------------------------------------------------------


@lru_cache(maxsize=16)
def _context(plan: ExperimentPlan, size: int) -> ObjectiveContext:
    plan.layout.validate(plan.grid)
    backbone = mst_backbone(plan.layout, plan.grid)
    n_sprn = size - len(backbone.devices)
    if n_sprn < 0:
        raise DomainError(
            f"size {size} is below the {len(backbone.devices)} devices the first phase already needs"
        )
    candidates = enumerate_candidates(backbone, plan.grid, plan.n_candidates)
    return ObjectiveContext(
        backbone, candidates, plan.grid, n_sprn,
        penalty_beta=plan.penalty_beta, lambda2_fprn=plan.lambda2_floor,
        delta_mu=plan.delta_mu, lambda2_max=plan.lambda2_max,
    )


def lifetime_at(ctx: ObjectiveContext, alpha: np.ndarray, energy: EnergyParams, mu_w: float):
    """Lifetime report of the deployment ``alpha`` under ``energy``.

    Hop distances are converted to meters with the grid spacing.
    """
    spacing = ctx.grid.spacing_m
    base = ctx.backbone
    aug = base.augmented(ctx.selected_vertices(alpha))
    chs = aug.indices("CH")
    fprn = aug.indices("FPRN")
    s0 = spectral_summary(ctx.l_initial)
    mu0 = average_distance(wiener_spectral(s0), s0.n, ctx.delta_mu)
    return lifetime_report(
        energy,
        n_ch=len(chs), n_fprn=len(fprn), n_sprn=ctx.n_sprn,
        fprn_k=relay_multipliers(base.graph, base.bs_index, chs, fprn),
        fprn_mu_w_m=mu0 * spacing,
        all_k=relay_multipliers(aug.graph, aug.bs_index, chs, aug.relay_indices),
        mu_w_m=mu_w * spacing,
    )


def run_cell(plan: ExperimentPlan, size: int, kind: str, rep: int) -> dict:
    seed = cell_seed(plan.base_seed, size, kind, rep)
    out = {"key": (size, kind, rep), "seed": seed}
    try:
        ctx = _context(plan, size)
        cfg = OptimizerConfig(
            plan.population(size), plan.effective_generations, seed,
            de=plan.de, gsa=plan.gsa, abc=plan.abc,
        )
        t0 = time.perf_counter()
        trace = optimize(ctx, cfg, kind)
        wall = (time.perf_counter() - t0) * 1e3
        fit = evaluate(trace.final_alpha, ctx)
        if not fit.feasible:
            raise DomainError("no feasible deployment found")
        rep_ = lifetime_at(ctx, trace.final_alpha, plan.energy.at_traffic(plan.report_traffic), fit.mu_w)
        out["row"] = ResultRow(
            kind, size, rep, seed, fit.wiener, fit.mu_w, rep_.mean_e_p, rep_.t_rounds,
            fit.lambda2_new, wall if plan.record_wall_time else None,
        )
        out["trace"] = list(trace.best_fitness_per_generation)
        out["load"] = [
            lifetime_at(ctx, trace.final_alpha, plan.energy.at_traffic(t), fit.mu_w).t_rounds
            for t in plan.traffic_levels
        ]
    except RelayDeployError as exc:
        out["error"] = CellError(kind, size, rep, seed, str(exc))
    return out


def _run_cell_args(args) -> dict:
    return run_cell(*args)


def run_plan(plan: ExperimentPlan) -> RunRecord:
    """Run every cell of ``plan``. Failing cells become error records."""
    cells = plan.cells()
    jobs = [(plan, n, k, r) for n, k, r in cells]
    if plan.workers > 1:
        with ProcessPoolExecutor(max_workers=plan.workers) as pool:
            results = list(pool.map(_run_cell_args, jobs))
    else:
        results = [_run_cell_args(j) for j in jobs]

    order = {k: i for i, k in enumerate(KINDS)}
    results.sort(key=lambda o: (o["key"][0], order[o["key"][1]], o["key"][2]))
    record = RunRecord(plan)
    for o in results:
        if "error" in o:
            log.warning("cell %s failed: %s", o["key"], o["error"].message)
            record.errors.append(o["error"])
            continue
        record.rows.append(o["row"])
        record.traces[o["key"]] = o["trace"]
        record.load[o["key"]] = o["load"]
    bad = record.band_violations()
    if bad:
        log.warning(
            "%d of %d accepted deployments have lambda2 outside [%.1f, %.1f]",
            len(bad), len(record.rows), *LAMBDA2_BAND,
        )
    return record


# ---------------------------------------------------------------------------
# statistics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StatsSummary:
    optimizer: str
    network_size: int
    count: int
    mean: dict
    std: dict
    p_value: dict  # None for the reference optimizer


def _p_value(a: np.ndarray, b: np.ndarray, test: str) -> float:
    if test == "mannwhitney":
        if np.array_equal(np.sort(a), np.sort(b)):
            return 1.0
        return float(stats.mannwhitneyu(a, b, alternative="two-sided").pvalue)
    if np.std(a) == 0 and np.std(b) == 0:
        # Welch is undefined for two constant samples
        return 1.0 if a[0] == b[0] else 0.0
    return float(stats.ttest_ind(a, b, equal_var=False).pvalue)


def summarize(
    rows: Sequence[ResultRow], reference: str = "DE", test: str = "welch"
) -> list:
    """Mean, sample STD and p-value against ``reference`` for every (size, optimizer)."""
    cells: dict = {}
    for r in rows:
        cells.setdefault((r.network_size, r.optimizer), []).append(r)
    order = {k: i for i, k in enumerate(KINDS)}
    out = []
    for size, kind in sorted(cells, key=lambda c: (c[0], order.get(c[1], 99), c[1])):
        group = cells[(size, kind)]
        if len(group) < 2:
            raise DomainError(f"need >= 2 repetitions for {kind} at N={size}")
        ref = cells.get((size, reference))
        if ref is None:
            raise DomainError(f"no {reference} reference sample at N={size}")
        mean, std, p = {}, {}, {}
        for m in METRICS:
            a = np.array([getattr(r, m) for r in group], dtype=np.float64)
            mean[m] = float(a.mean())
            std[m] = float(a.std(ddof=1))
            if kind == reference:
                p[m] = None
            else:
                b = np.array([getattr(r, m) for r in ref], dtype=np.float64)
                p[m] = _p_value(a, b, test)
        out.append(StatsSummary(kind, size, len(group), mean, std, p))
    return out


def normalized_lifetime(summaries: Sequence[StatsSummary], anchor=("ABC", 20)) -> dict:
    """Mean T_R of every cell divided by the anchor cell's mean T_R."""
    ref = [s for s in summaries if (s.optimizer, s.network_size) == anchor]
    if not ref:
        raise DomainError(f"no {anchor[0]} summary at N={anchor[1]} to normalise against")
    base = ref[0].mean["t_r"]
    return {(s.optimizer, s.network_size): s.mean["t_r"] / base for s in summaries}


def convergence_generation(trace: Sequence[float], within: float = 0.05) -> int:
    """First generation whose best value is within ``within`` (relative) of the final one."""
    t = np.asarray(trace, dtype=np.float64)
    final = t[-1]
    if not np.isfinite(final):
        return len(t) - 1
    ok = np.abs(t - final) <= within * abs(final)
    return int(np.argmax(ok))


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------


def _write(path, text: str) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path


def _csv_text(header: Sequence[str], body: Iterable[Sequence[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    w.writerow(header)
    w.writerows(body)
    return buf.getvalue()


def emit_csv(rows: Sequence[ResultRow], path) -> Path:
    return _write(path, _csv_text(CSV_HEADER, (r.as_csv() for r in rows)))


def read_csv(path) -> list:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if tuple(header or ()) != CSV_HEADER:
            raise DomainError(f"{path}: unexpected header {header}")
        rows = []
        for rec in reader:
            if not rec:
                continue
            opt, n, rep, seed, *vals, wall = rec
            rows.append(ResultRow(
                opt, int(n), int(rep), int(seed), *(float(v) for v in vals),
                float(wall) if wall else None,
            ))
    return rows


def _fmt(v) -> str:
    return "-" if v is None else repr(float(v))


def emit_summary_csv(summaries: Sequence[StatsSummary], path, test: str = "welch") -> Path:
    """One line per (size, optimizer, metric) with mean, std and p-value."""
    body = [
        [str(s.network_size), s.optimizer, m, _fmt(s.mean[m]), _fmt(s.std[m]), _fmt(s.p_value[m]), test]
        for s in summaries
        for m in METRICS
    ]
    header = ("network_size", "optimizer", "metric", "mean", "std", "p_value", "test")
    return _write(path, _csv_text(header, body))


def emit_errors_csv(errors: Sequence[CellError], path) -> Path:
    header = ("optimizer", "network_size", "repetition", "seed", "message")
    body = [[e.optimizer, str(e.network_size), str(e.repetition), str(e.seed), e.message] for e in errors]
    return _write(path, _csv_text(header, body))


def emit_traces_csv(record: RunRecord, path) -> Path:
    header = ("optimizer", "network_size", "repetition", "generation", "best_fitness")
    body = [
        [k, str(n), str(r), str(g), repr(float(v))]
        for (n, k, r), tr in record.traces.items()
        for g, v in enumerate(tr)
    ]
    return _write(path, _csv_text(header, body))


def emit_load_csv(record: RunRecord, path) -> Path:
    header = ("optimizer", "network_size", "repetition", "traffic", "t_r")
    body = [
        [k, str(n), str(r), repr(t), repr(float(v))]
        for (n, k, r), vals in record.load.items()
        for t, v in zip(record.plan.traffic_levels, vals)
    ]
    return _write(path, _csv_text(header, body))


def plot_series(rows: Sequence[ResultRow], kind: str, traces=None, load=None, traffic_levels=None) -> dict:
    """Per-optimizer series averaged over repetitions.

    ``convergence`` needs ``traces`` keyed like :attr:`RunRecord.traces`;
    ``lifetime_vs_load`` needs ``load`` and ``traffic_levels``.
    """
    if kind not in PLOT_KINDS:
        raise DomainError(f"unknown plot kind {kind!r}; choose from {PLOT_KINDS}")
    series: dict = {}
    if kind in ("lifetime_vs_size", "connectivity_vs_size"):
        metric = "t_r" if kind == "lifetime_vs_size" else "lambda2"
        if not rows:
            raise DomainError(f"{kind}: no rows, so the network_size axis is empty")
        groups: dict = {}
        for r in rows:
            groups.setdefault(r.optimizer, {}).setdefault(r.network_size, []).append(getattr(r, metric))
        for opt, by_n in groups.items():
            series[opt] = [(n, float(np.mean(v))) for n, v in sorted(by_n.items())]
    elif kind == "convergence":
        if not traces:
            raise DomainError("convergence: no per-generation traces, so the generation axis is missing")
        groups = {}
        for (n, k, r), tr in traces.items():
            groups.setdefault((k, n), []).append(tr)
        for (k, n), trs in groups.items():
            if len({len(t) for t in trs}) != 1:
                raise DomainError(f"convergence: traces for {k} N={n} differ in length")
            mean = np.mean(np.asarray(trs, dtype=np.float64), axis=0)
            series[f"{k}@{n}"] = [(g, float(v)) for g, v in enumerate(mean)]
    else:
        if not load or not traffic_levels:
            raise DomainError("lifetime_vs_load: no load sweep, so the traffic axis is missing")
        groups = {}
        for (n, k, r), vals in load.items():
            groups.setdefault((k, n), []).append(vals)
        for (k, n), vals in groups.items():
            mean = np.mean(np.asarray(vals, dtype=np.float64), axis=0)
            series[f"{k}@{n}"] = [(t, float(v)) for t, v in zip(traffic_levels, mean)]
    return series


def emit_plot_data(rows, kind: str, path, traces=None, load=None, traffic_levels=None) -> Path:
    """Plain-text ``# series`` blocks with two whitespace-separated columns."""
    series = plot_series(rows, kind, traces, load, traffic_levels)
    lines = [f"# kind: {kind}"]
    for name in sorted(series):
        lines.append(f"# series: {name}")
        lines.extend(f"{x!r} {y!r}" for x, y in series[name])
    return _write(path, "\n".join(lines) + "\n")


def write_outputs(record: RunRecord, out_dir) -> list:
    """Write rows, summary, traces, load sweep, plot data and errors under ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    plan = record.plan
    written = [emit_csv(record.rows, out / "rows.csv")]
    if record.errors:
        written.append(emit_errors_csv(record.errors, out / "errors.csv"))
    if not record.rows:
        return written
    written.append(emit_traces_csv(record, out / "traces.csv"))
    written.append(emit_load_csv(record, out / "load_sweep.csv"))
    try:
        summaries = summarize(record.rows, test=plan.significance)
    except DomainError as exc:
        log.warning("summary skipped: %s", exc)
    else:
        written.append(emit_summary_csv(summaries, out / "summary.csv", plan.significance))
    for kind in PLOT_KINDS:
        written.append(emit_plot_data(
            record.rows, kind, out / f"{kind}.dat",
            record.traces, record.load, plan.traffic_levels,
        ))
    return written


def output_dir(default=".") -> Path:
    return Path(os.environ.get("RELAYDEPLOY_OUTPUT_DIR") or default)


__all__ = [
    "CSV_HEADER", "ExperimentPlan", "ResultRow", "CellError", "RunRecord", "StatsSummary",
    "cell_seed", "run_plan", "run_cell", "summarize", "emit_csv", "read_csv",
    "emit_summary_csv", "emit_plot_data", "plot_series", "convergence_generation",
    "normalized_lifetime", "paper_scale_plan", "write_outputs", "lifetime_at",
]
