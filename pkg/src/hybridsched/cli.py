"""Command-line interface.

Subcommands cover the full pipeline: reduce recorded power traces to
energy, build system profiles from benchmark records, ingest or synthesize
workloads, and run threshold/scalarization sweeps or per-query assignment.
Outputs are plot-ready CSV/JSON only; rendering is left to external tools.

Every command is a deterministic function of its inputs, settings, and
seed. Settings resolve with the precedence: command-line flag, then
``--config`` JSON file, then built-in default. Each output file embeds a
digest of the resolved settings for provenance (CSV files carry it in a
leading ``#`` comment line, which all readers here skip). Exit codes:
0 success, 2 input/schema error, 3 infeasibility, 4 internal error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import hashlib
import json
import math
import sys
from pathlib import Path
from typing import Any, Mapping, Sequence

from .cost import CostMode, CostWeights, query_mode_cost, weights_from_baseline
from .errors import (
    CapabilityError,
    HybridSchedError,
    InfeasibleError,
    ValidationError,
)
from .optimizer import (
    SweepCurve,
    brute_force_assignment,
    default_threshold_grid,
    optimal_assignment,
    pareto_sweep,
    sweep_threshold,
)
from .profiles import (
    Axis,
    SystemProfile,
    SystemSet,
    build_profile,
    read_benchmark_csv,
    read_profile_json,
    write_profile_json,
)
from .synth import CrossoverSpec, make_crossover_profiles
from .traces import read_trace_csv, read_trace_meta, reduce_trace
from .workload import (
    WorkloadDistribution,
    ingest_counts,
    read_histogram_json,
    read_queries_csv,
    synth_workload,
    write_histogram_json,
    write_queries_csv,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INFEASIBLE = 3
EXIT_INTERNAL = 4

DEFAULT_LAMBDA_GRID = tuple(i / 10 for i in range(11))


# ---------------------------------------------------------------------------
# Settings resolution and provenance.


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise ValidationError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"{path}: line {exc.lineno}: invalid JSON: {exc.msg}"
        ) from exc
    if not isinstance(data, dict):
        raise ValidationError(f"{path}: config must hold a JSON object")
    return data


class Settings:
    """Resolved settings for one command: flags override config fields."""

    def __init__(self, args: argparse.Namespace):
        self._args = args
        self._config = _load_config(getattr(args, "config", None))

    def get(self, name: str, default: Any = None) -> Any:
        value = getattr(self._args, name, None)
        if value is not None:
            return value
        if name in self._config:
            return self._config[name]
        return default

    def require(self, name: str) -> Any:
        value = self.get(name)
        if value is None:
            raise ValidationError(
                f"missing required setting {name!r} (set a flag or config key)"
            )
        return value


def _digest(payload: Mapping) -> str:
    """Stable hash of the resolved settings; output paths are excluded so
    re-running the same configuration elsewhere yields identical files."""
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


def _out_dir(settings: Settings) -> Path:
    out = Path(settings.get("out", "out"))
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ValidationError(f"cannot create output directory {out}: {exc}") from exc
    return out


def _write_json(path: Path, payload: Mapping) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {exc}")


def _parse_float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers: {exc}")


def _axis(settings: Settings) -> Axis:
    value = settings.get("axis", Axis.INPUT.value)
    try:
        return Axis(value)
    except ValueError:
        raise ValidationError(
            f"unknown axis {value!r} (expected 'input' or 'output')"
        ) from None


def _mode(settings: Settings) -> CostMode:
    value = settings.get("mode", CostMode.INPUT_SLICE.value)
    try:
        return CostMode(value)
    except ValueError:
        allowed = ", ".join(m.value for m in CostMode)
        raise ValidationError(f"unknown mode {value!r} (expected one of: {allowed})") from None


def _lambda(settings: Settings, default: float = 1.0) -> float:
    value = float(settings.get("lam", default))
    if not 0.0 <= value <= 1.0:
        raise ValidationError(f"lambda must lie in [0, 1], got {value}")
    return value


def _load_workload(path: str) -> WorkloadDistribution:
    if str(path).endswith(".json"):
        return read_histogram_json(path)
    return ingest_counts(read_queries_csv(path))


def _resolve_weights(
    settings: Settings,
    dist: WorkloadDistribution,
    axis: Axis,
    large: SystemProfile,
    lam: float,
) -> CostWeights:
    energy_scale = settings.get("energy_scale_j")
    runtime_scale = settings.get("runtime_scale_s")
    if energy_scale is None or runtime_scale is None:
        derived = weights_from_baseline(dist, axis, large, lam)
        if energy_scale is None:
            energy_scale = derived.energy_scale_j
        if runtime_scale is None:
            runtime_scale = derived.runtime_scale_s
    return CostWeights(lam, float(energy_scale), float(runtime_scale))


# ---------------------------------------------------------------------------
# Sweep/report serialization.


def _weights_dict(weights: CostWeights) -> dict:
    return {
        "lambda": weights.lam,
        "energy_scale_j": weights.energy_scale_j,
        "runtime_scale_s": weights.runtime_scale_s,
    }


def _baselines_dict(curve: SweepCurve) -> dict:
    out = {}
    for system_id, point in curve.baselines.items():
        out[system_id] = {
            "energy_j": point.energy_j if point.feasible else None,
            "runtime_s": point.runtime_s if point.feasible else None,
            "feasible": point.feasible,
        }
    return out


def _points_list(curve: SweepCurve) -> list[dict]:
    return [
        {
            "swept_value": p.swept_value,
            "total_energy_j": p.total_energy_j,
            "total_runtime_s": p.total_runtime_s,
            "total_cost": p.total_cost,
            "threshold": p.threshold,
        }
        for p in curve.points
    ]


def _write_sweep_csv(path: Path, curve: SweepCurve, digest: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(f"# config_digest={digest}\n")
        writer = csv.writer(fh)
        writer.writerow(["swept_value", "total_energy_j", "total_runtime_s", "total_cost"])
        for p in curve.points:
            writer.writerow(
                [repr(p.swept_value), repr(p.total_energy_j), repr(p.total_runtime_s), repr(p.total_cost)]
            )


def _run_pareto(
    out: Path,
    dist: WorkloadDistribution,
    axis: Axis,
    small: SystemProfile,
    large: SystemProfile,
    lams: Sequence[float],
    thresholds: Sequence[int],
    digest: str,
    energy_scale_j: float | None = None,
    runtime_scale_s: float | None = None,
) -> None:
    curve = pareto_sweep(
        dist, axis, small, large, list(lams), list(thresholds),
        energy_scale_j=energy_scale_j, runtime_scale_s=runtime_scale_s,
    )
    _write_sweep_csv(out / f"pareto_{axis.value}.csv", curve, digest)
    _write_json(
        out / f"pareto_{axis.value}.json",
        {
            "config_digest": digest,
            "swept": "lambda",
            "axis": axis.value,
            "small_system": small.system_id,
            "large_system": large.system_id,
            "threshold_grid": list(thresholds),
            "baselines": _baselines_dict(curve),
            "best": None,
            "points": _points_list(curve),
        },
    )
    print(f"pareto_{axis.value}: {len(curve.points)} points")


# ---------------------------------------------------------------------------
# Commands.


def cmd_trace_reduce(args: argparse.Namespace) -> int:
    settings = Settings(args)
    trace_path = settings.require("trace")
    meta_path = settings.require("meta")
    active = settings.get("active_cores")
    resolved = {
        "command": "trace-reduce",
        "trace": str(trace_path),
        "meta": str(meta_path),
        "active_cores": active,
    }
    digest = _digest(resolved)

    samples = read_trace_csv(trace_path)
    meta = read_trace_meta(meta_path)
    if active is not None:
        if isinstance(active, str):
            active = [c.strip() for c in active.split(",") if c.strip()]
        meta = dataclasses.replace(meta, active_cores=tuple(active))
    result = reduce_trace(samples, meta)

    out = _out_dir(settings)
    _write_json(
        out / "energy.json",
        {
            "config_digest": digest,
            "platform_kind": meta.platform_kind.value,
            "total_j": result.total_j,
            "per_channel_j": result.per_channel_j,
            "duration_s": result.duration_s,
            "negative_intervals": result.negative_intervals,
        },
    )
    print(f"total_j={result.total_j:.6f}")
    return EXIT_OK


def cmd_profile_build(args: argparse.Namespace) -> int:
    settings = Settings(args)
    records_path = settings.require("records")
    cap = settings.get("max_output_tokens")
    resolved = {
        "command": "profile-build",
        "records": str(records_path),
        "max_output_tokens": cap,
    }
    digest = _digest(resolved)

    records = read_benchmark_csv(records_path)
    profile = build_profile(records, max_output_tokens=None if cap is None else int(cap))

    out = _out_dir(settings)
    write_profile_json(out / "profile.json", profile, extra={"config_digest": digest})
    print(
        f"profile {profile.system_id}: {len(profile.input_curve)} input cells, "
        f"{len(profile.output_curve)} output cells"
    )
    return EXIT_OK


def cmd_workload_ingest(args: argparse.Namespace) -> int:
    settings = Settings(args)
    queries_path = settings.require("queries")
    digest = _digest({"command": "workload-ingest", "queries": str(queries_path)})
    rows = read_queries_csv(queries_path)
    dist = ingest_counts(rows)
    out = _out_dir(settings)
    write_histogram_json(out / "histogram.json", dist, extra={"config_digest": digest})
    print(
        f"{dist.total_queries} queries, input keys up to {dist.max_input}, "
        f"output keys up to {dist.max_output}"
    )
    return EXIT_OK


def cmd_workload_synth(args: argparse.Namespace) -> int:
    settings = Settings(args)
    count = int(settings.get("count", 1000))
    log_mean = float(settings.get("log_mean", math.log(64)))
    log_sigma = float(settings.get("log_sigma", 1.0))
    seed = int(settings.get("seed", 0))
    resolved = {
        "command": "workload-synth",
        "count": count,
        "log_mean": log_mean,
        "log_sigma": log_sigma,
        "seed": seed,
    }
    digest = _digest(resolved)
    rows = synth_workload(count, log_mean, log_sigma, seed)
    out = _out_dir(settings)
    write_queries_csv(out / "queries.csv", rows, header_comment=f"config_digest={digest}")
    write_histogram_json(
        out / "histogram.json", ingest_counts(rows), extra={"config_digest": digest}
    )
    print(f"wrote {count} synthetic queries (seed={seed})")
    return EXIT_OK


def _run_threshold_sweep(
    settings: Settings,
    out: Path,
    dist: WorkloadDistribution,
    axis: Axis,
    small: SystemProfile,
    large: SystemProfile,
    lam: float,
    grid: Sequence[int] | None,
    digest: str,
    tag: str,
) -> tuple[SweepCurve, int, CostWeights]:
    weights = _resolve_weights(settings, dist, axis, large, lam)
    if grid is None:
        grid = default_threshold_grid(small, large, axis)
    curve, best = sweep_threshold(dist, axis, small, large, weights, grid)
    chosen = next(p for p in curve.points if p.threshold == best)

    _write_sweep_csv(out / f"sweep_{tag}.csv", curve, digest)
    _write_json(
        out / f"sweep_{tag}.json",
        {
            "config_digest": digest,
            "swept": "threshold",
            "axis": axis.value,
            "weights": _weights_dict(weights),
            "small_system": small.system_id,
            "large_system": large.system_id,
            "baselines": _baselines_dict(curve),
            "best": _points_list(SweepCurve((chosen,), curve.baselines))[0],
            "points": _points_list(curve),
        },
    )
    _write_json(
        out / f"policy_{tag}.json",
        {
            "config_digest": digest,
            "axis": axis.value,
            "threshold": best,
            "small_system": small.system_id,
            "large_system": large.system_id,
            "total_energy_j": chosen.total_energy_j,
            "total_runtime_s": chosen.total_runtime_s,
            "total_cost": chosen.total_cost,
            "weights": _weights_dict(weights),
        },
    )
    print(
        f"{tag}: best threshold {best} "
        f"(energy {chosen.total_energy_j:.3f} J, runtime {chosen.total_runtime_s:.3f} s)"
    )
    return curve, best, weights


def cmd_optimize(args: argparse.Namespace) -> int:
    settings = Settings(args)
    small = read_profile_json(settings.require("small"))
    large = read_profile_json(settings.require("large"))
    dist = _load_workload(settings.require("workload"))
    axis = _axis(settings)
    lam = _lambda(settings)
    grid = settings.get("threshold_grid")
    lambda_grid = settings.get("lambda_grid")
    resolved = {
        "command": "optimize",
        "small": str(settings.require("small")),
        "large": str(settings.require("large")),
        "workload": str(settings.require("workload")),
        "axis": axis.value,
        "lambda": lam,
        "threshold_grid": list(grid) if grid is not None else None,
        "lambda_grid": list(lambda_grid) if lambda_grid is not None else None,
        "energy_scale_j": settings.get("energy_scale_j"),
        "runtime_scale_s": settings.get("runtime_scale_s"),
    }
    digest = _digest(resolved)
    out = _out_dir(settings)
    thresholds = (
        default_threshold_grid(small, large, axis)
        if grid is None
        else [int(t) for t in grid]
    )
    _run_threshold_sweep(
        settings, out, dist, axis, small, large, lam, thresholds, digest, axis.value
    )
    if lambda_grid is not None:
        _run_pareto(
            out, dist, axis, small, large,
            [float(v) for v in lambda_grid], thresholds, digest,
        )
    return EXIT_OK


def cmd_pareto(args: argparse.Namespace) -> int:
    settings = Settings(args)
    small = read_profile_json(settings.require("small"))
    large = read_profile_json(settings.require("large"))
    dist = _load_workload(settings.require("workload"))
    axis = _axis(settings)
    grid = settings.get("threshold_grid")
    lambda_grid = settings.get("lambda_grid")
    lams = [float(v) for v in (lambda_grid if lambda_grid is not None else DEFAULT_LAMBDA_GRID)]
    resolved = {
        "command": "pareto",
        "small": str(settings.require("small")),
        "large": str(settings.require("large")),
        "workload": str(settings.require("workload")),
        "axis": axis.value,
        "lambda_grid": lams,
        "threshold_grid": list(grid) if grid is not None else None,
        "energy_scale_j": settings.get("energy_scale_j"),
        "runtime_scale_s": settings.get("runtime_scale_s"),
    }
    digest = _digest(resolved)
    out = _out_dir(settings)
    thresholds = (
        default_threshold_grid(small, large, axis)
        if grid is None
        else [int(t) for t in grid]
    )
    energy_scale = settings.get("energy_scale_j")
    runtime_scale = settings.get("runtime_scale_s")
    _run_pareto(
        out, dist, axis, small, large, lams, thresholds, digest,
        energy_scale_j=None if energy_scale is None else float(energy_scale),
        runtime_scale_s=None if runtime_scale is None else float(runtime_scale),
    )
    return EXIT_OK


def cmd_assign(args: argparse.Namespace) -> int:
    settings = Settings(args)
    profile_paths = settings.require("profiles")
    if isinstance(profile_paths, str):
        profile_paths = [profile_paths]
    systems = SystemSet.of(*(read_profile_json(p) for p in profile_paths))
    queries = read_queries_csv(settings.require("queries"))
    mode = _mode(settings)
    lam = _lambda(settings)
    weights = CostWeights(
        lam,
        float(settings.get("energy_scale_j", 1.0)),
        float(settings.get("runtime_scale_s", 1.0)),
    )
    resolved = {
        "command": "assign",
        "profiles": [str(p) for p in profile_paths],
        "queries": str(settings.require("queries")),
        "mode": mode.value,
        "weights": _weights_dict(weights),
    }
    digest = _digest(resolved)
    out = _out_dir(settings)

    assignment = optimal_assignment(queries, systems, weights, mode)
    per_query_cost = [
        query_mode_cost(systems.profiles[assignment.system_of(i)], q, weights, mode)
        for i, q in enumerate(queries)
    ]
    total_cost = math.fsum(per_query_cost)

    with open(out / "assignment.csv", "w", newline="", encoding="utf-8") as fh:
        fh.write(f"# config_digest={digest}\n")
        writer = csv.writer(fh)
        writer.writerow(["query_index", "m", "n", "system_id", "cost"])
        for i, q in enumerate(queries):
            writer.writerow([i, q.m, q.n, assignment.system_of(i), repr(per_query_cost[i])])

    sidecar = {
        "config_digest": digest,
        "mode": mode.value,
        "weights": _weights_dict(weights),
        "total_cost": total_cost,
        "query_count": len(queries),
        "per_system_counts": {
            sys_id: len(indices) for sys_id, indices in sorted(assignment.groups.items())
        },
    }
    if getattr(args, "oracle", False):
        oracle = brute_force_assignment(queries, systems, weights, mode)
        oracle_cost = math.fsum(
            query_mode_cost(systems.profiles[oracle.system_of(i)], q, weights, mode)
            for i, q in enumerate(queries)
        )
        sidecar["oracle_total_cost"] = oracle_cost
        sidecar["oracle_matches"] = oracle_cost == total_cost
    _write_json(out / "assignment.json", sidecar)
    print(f"assigned {len(queries)} queries, total_cost={total_cost:.6f}")
    return EXIT_OK


DEMO_CROSSOVER = CrossoverSpec(
    crossover_tokens=32,
    small_low_j_per_tok=0.5,
    small_high_j_per_tok=2.0,
    large_flat_j_per_tok=1.0,
    runtime_ratio=4.0,
)
DEMO_GRID = (8, 16, 32, 64, 128, 256, 512)
DEMO_QUERY_COUNT = 2000
DEMO_LOG_MEAN = math.log(48)
DEMO_LOG_SIGMA = 1.0


def cmd_demo(args: argparse.Namespace) -> int:
    """End-to-end run on synthetic data: profiles, workload, sweeps, pareto."""
    settings = Settings(args)
    seed = int(settings.get("seed", 0))
    lam = _lambda(settings)
    resolved = {
        "command": "demo",
        "seed": seed,
        "lambda": lam,
        "count": DEMO_QUERY_COUNT,
        "log_mean": DEMO_LOG_MEAN,
        "log_sigma": DEMO_LOG_SIGMA,
        "grid": list(DEMO_GRID),
        "crossover_tokens": DEMO_CROSSOVER.crossover_tokens,
    }
    digest = _digest(resolved)
    out = _out_dir(settings)

    small, large = make_crossover_profiles(DEMO_CROSSOVER, DEMO_GRID)
    write_profile_json(out / "small_profile.json", small, extra={"config_digest": digest})
    write_profile_json(out / "large_profile.json", large, extra={"config_digest": digest})

    rows = synth_workload(DEMO_QUERY_COUNT, DEMO_LOG_MEAN, DEMO_LOG_SIGMA, seed)
    write_queries_csv(out / "queries.csv", rows, header_comment=f"config_digest={digest}")
    dist = ingest_counts(rows)
    write_histogram_json(out / "histogram.json", dist, extra={"config_digest": digest})

    for axis in (Axis.INPUT, Axis.OUTPUT):
        _run_threshold_sweep(
            settings, out, dist, axis, small, large, lam, None, digest, axis.value
        )

    thresholds = default_threshold_grid(small, large, Axis.INPUT)
    _run_pareto(
        out, dist, Axis.INPUT, small, large, DEFAULT_LAMBDA_GRID, thresholds, digest
    )
    print(f"demo outputs written to {out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser wiring.


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; flags override its fields")
    common.add_argument("--out", help="output directory (default: ./out)")
    common.add_argument("--seed", type=int, help="seed for randomized steps")
    common.add_argument(
        "--lambda", dest="lam", type=float,
        help="scalarization weight on energy, in [0, 1]",
    )
    common.add_argument("--axis", choices=[a.value for a in Axis], help="token axis")
    common.add_argument(
        "--mode", choices=[m.value for m in CostMode],
        help="pricing mode for full (m, n) queries",
    )

    parser = argparse.ArgumentParser(
        prog="hybridsched",
        description="Energy/runtime-aware routing of LLM inference queries "
        "across heterogeneous hardware.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    trace = sub.add_parser("trace", help="power-trace operations")
    trace_sub = trace.add_subparsers(dest="subcommand", required=True)
    reduce_p = trace_sub.add_parser(
        "reduce", parents=[common], help="reduce a trace CSV to total energy"
    )
    reduce_p.add_argument("--trace", help="trace CSV (elapsed_s,channel,power_w[,impact_factor])")
    reduce_p.add_argument("--meta", help="meta JSON (platform_kind, idle_power_w, ...)")
    reduce_p.add_argument(
        "--active-cores", dest="active_cores",
        help="comma-separated core channels for per-core traces",
    )
    reduce_p.set_defaults(func=cmd_trace_reduce)

    profile = sub.add_parser("profile", help="system-profile operations")
    profile_sub = profile.add_subparsers(dest="subcommand", required=True)
    build_p = profile_sub.add_parser(
        "build", parents=[common], help="aggregate benchmark records into a profile"
    )
    build_p.add_argument("--records", help="benchmark record CSV")
    build_p.add_argument(
        "--max-output-tokens", dest="max_output_tokens", type=int,
        help="output-axis capability cap for this system",
    )
    build_p.set_defaults(func=cmd_profile_build)

    workload = sub.add_parser("workload", help="workload operations")
    workload_sub = workload.add_subparsers(dest="subcommand", required=True)
    ingest_p = workload_sub.add_parser(
        "ingest", parents=[common], help="histogram a query CSV"
    )
    ingest_p.add_argument("--queries", help="query CSV with columns m,n")
    ingest_p.set_defaults(func=cmd_workload_ingest)
    synth_p = workload_sub.add_parser(
        "synth", parents=[common], help="generate a synthetic workload"
    )
    synth_p.add_argument("--count", type=int, help="number of queries (default 1000)")
    synth_p.add_argument("--log-mean", dest="log_mean", type=float, help="log-space mean")
    synth_p.add_argument("--log-sigma", dest="log_sigma", type=float, help="log-space sigma")
    synth_p.set_defaults(func=cmd_workload_synth)

    optimize_p = sub.add_parser(
        "optimize", parents=[common], help="threshold sweep over a workload"
    )
    pareto_p = sub.add_parser(
        "pareto", parents=[common], help="lambda sweep tracing the energy/runtime trade-off"
    )
    for p in (optimize_p, pareto_p):
        p.add_argument("--small", help="profile JSON of the efficient system")
        p.add_argument("--large", help="profile JSON of the fast system")
        p.add_argument("--workload", help="query CSV or histogram JSON")
        p.add_argument(
            "--grid", dest="threshold_grid", type=_parse_int_list,
            help="comma-separated candidate thresholds (default: profiled grid)",
        )
        p.add_argument("--energy-scale", dest="energy_scale_j", type=float)
        p.add_argument("--runtime-scale", dest="runtime_scale_s", type=float)
        p.add_argument(
            "--lambda-grid", dest="lambda_grid", type=_parse_float_list,
            help="comma-separated lambda values; optimize adds a lambda sweep "
            "when given (pareto default: 0,0.1,...,1)",
        )
    optimize_p.set_defaults(func=cmd_optimize)
    pareto_p.set_defaults(func=cmd_pareto)

    assign_p = sub.add_parser(
        "assign", parents=[common], help="per-query optimal assignment"
    )
    assign_p.add_argument("--queries", help="query CSV with columns m,n")
    assign_p.add_argument("--profiles", nargs="+", help="profile JSON files")
    assign_p.add_argument("--energy-scale", dest="energy_scale_j", type=float)
    assign_p.add_argument("--runtime-scale", dest="runtime_scale_s", type=float)
    assign_p.add_argument(
        "--oracle", action="store_true", help=argparse.SUPPRESS
    )  # debug: cross-check against the exhaustive oracle
    assign_p.set_defaults(func=cmd_assign)

    demo_p = sub.add_parser(
        "demo", parents=[common], help="end-to-end run on synthetic data"
    )
    demo_p.set_defaults(func=cmd_demo)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename}", file=sys.stderr)
        return EXIT_INPUT
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CapabilityError, InfeasibleError) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except HybridSchedError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
