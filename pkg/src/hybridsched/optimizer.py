"""Policy search: threshold sweeps, optimal assignment, scalarization sweeps.

``sweep_threshold`` evaluates the aggregate cost of every candidate cutoff
and reports the cheapest, alongside single-system baselines. For explicit
query lists, ``optimal_assignment`` places each query on its cheapest
system; because the objective is a sum of independent per-query terms and
the only constraint is that each query runs exactly once, the per-query
argmin is globally optimal. ``brute_force_assignment`` checks that claim by
exhaustive enumeration on small instances. ``pareto_sweep`` traces the
energy/runtime trade-off by re-running the threshold sweep across a grid of
scalarization weights.

Evaluations at distinct grid points are independent pure calls; results are
assembled in grid order, so everything here is deterministic.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .cost import (
    CostMode,
    CostWeights,
    aggregate_energy,
    query_mode_cost,
    scalarize,
    single_system_outcome,
)
from .errors import CapabilityError, InfeasibleError, OracleBoundError, ValidationError
from .policy import Assignment, ThresholdPolicy
from .profiles import Axis, SystemProfile, SystemSet
from .workload import QueryRecord, WorkloadDistribution


@dataclass(frozen=True)
class SweepPoint:
    """One evaluated point of a sweep. ``threshold`` records the cutoff
    behind the point (equal to ``swept_value`` on threshold sweeps)."""

    swept_value: float
    total_energy_j: float
    total_runtime_s: float
    total_cost: float
    threshold: int


@dataclass(frozen=True)
class BaselinePoint:
    """Workload totals when a single system serves everything.

    Infeasible baselines (the system cannot serve some token count) are
    kept with infinite totals so both systems always appear.
    """

    energy_j: float
    runtime_s: float
    feasible: bool = True


@dataclass(frozen=True)
class SweepCurve:
    points: tuple[SweepPoint, ...]
    baselines: dict[str, BaselinePoint]


def _baseline(
    dist: WorkloadDistribution, axis: Axis, profile: SystemProfile
) -> BaselinePoint:
    try:
        outcome = single_system_outcome(dist, axis, profile)
    except CapabilityError:
        return BaselinePoint(math.inf, math.inf, feasible=False)
    return BaselinePoint(outcome.total_energy_j, outcome.total_runtime_s)


def sweep_threshold(
    dist: WorkloadDistribution,
    axis: Axis,
    small: SystemProfile,
    large: SystemProfile,
    weights: CostWeights,
    grid: Sequence[int],
) -> tuple[SweepCurve, int]:
    """Evaluate every candidate threshold and return (curve, best threshold).

    Grid values no system pairing can serve (e.g. cutoffs beyond the small
    system's output cap, or workloads whose tail exceeds the large system's
    cap at low cutoffs) are skipped with a warning. Ties break toward the
    smaller threshold. Raises if nothing on the grid is feasible.
    """
    if not grid:
        raise ValidationError("threshold grid must be non-empty")
    thresholds = sorted(set(grid))
    if thresholds[0] < 0:
        raise ValidationError(f"thresholds must be >= 0, got {thresholds[0]}")

    points: list[SweepPoint] = []
    for threshold in thresholds:
        policy = ThresholdPolicy(axis, threshold, small.system_id, large.system_id)
        try:
            outcome = aggregate_energy(dist, axis, policy, small, large)
        except CapabilityError as exc:
            warnings.warn(f"skipping threshold {threshold}: {exc}", stacklevel=2)
            continue
        cost = scalarize(outcome.total_energy_j, outcome.total_runtime_s, weights)
        points.append(
            SweepPoint(
                swept_value=float(threshold),
                total_energy_j=outcome.total_energy_j,
                total_runtime_s=outcome.total_runtime_s,
                total_cost=cost,
                threshold=threshold,
            )
        )
    if not points:
        raise InfeasibleError(
            f"no feasible threshold among {thresholds} on the {axis.value} axis"
        )

    best = points[0]
    for point in points[1:]:
        if point.total_cost < best.total_cost:
            best = point
    curve = SweepCurve(
        points=tuple(points),
        baselines={
            small.system_id: _baseline(dist, axis, small),
            large.system_id: _baseline(dist, axis, large),
        },
    )
    return curve, best.threshold


def optimal_assignment(
    queries: Sequence[QueryRecord],
    systems: SystemSet,
    weights: CostWeights,
    mode: CostMode,
) -> Assignment:
    """Assign every query to its cheapest feasible system.

    The total cost is a sum of independent per-query terms and the
    partition constraint never couples queries, so the per-query argmin is
    a global optimum. Cost ties break toward the lexicographically smaller
    system id.
    """
    choices: list[str] = []
    for index, query in enumerate(queries):
        best_id: str | None = None
        best_cost = math.inf
        for system_id in systems.ids():
            try:
                cost = query_mode_cost(systems.profiles[system_id], query, weights, mode)
            except CapabilityError:
                continue
            if cost < best_cost:
                best_id = system_id
                best_cost = cost
        if best_id is None:
            raise InfeasibleError(
                f"unservable query {index}: (m={query.m}, n={query.n}) "
                f"is beyond every system's capability"
            )
        choices.append(best_id)
    return Assignment.from_choices(tuple(queries), choices)


MAX_ORACLE_QUERIES = 12
MAX_ORACLE_SYSTEMS = 3


def brute_force_assignment(
    queries: Sequence[QueryRecord],
    systems: SystemSet,
    weights: CostWeights,
    mode: CostMode,
) -> Assignment:
    """Exhaustively enumerate every assignment and return a global minimum.

    A test oracle: only instances within (12 queries, 3 systems) are
    accepted. Enumeration follows lexicographic system-id order, so of
    equal-cost minima the lexicographically smallest assignment wins.
    """
    if len(queries) > MAX_ORACLE_QUERIES or len(systems.profiles) > MAX_ORACLE_SYSTEMS:
        raise OracleBoundError(
            f"oracle bound exceeded: {len(queries)} queries x "
            f"{len(systems.profiles)} systems (limit {MAX_ORACLE_QUERIES} x "
            f"{MAX_ORACLE_SYSTEMS})"
        )
    if not queries:
        return Assignment.from_choices((), ())

    ids = systems.ids()
    cost_rows: list[dict[str, float]] = []
    for index, query in enumerate(queries):
        row: dict[str, float] = {}
        for system_id in ids:
            try:
                row[system_id] = query_mode_cost(
                    systems.profiles[system_id], query, weights, mode
                )
            except CapabilityError:
                continue
        if not row:
            raise InfeasibleError(
                f"unservable query {index}: (m={query.m}, n={query.n}) "
                f"is beyond every system's capability"
            )
        cost_rows.append(row)

    best_total = math.inf
    best_combo: tuple[str, ...] | None = None
    for combo in product(ids, repeat=len(queries)):
        costs = []
        feasible = True
        for row, system_id in zip(cost_rows, combo):
            cost = row.get(system_id)
            if cost is None:
                feasible = False
                break
            costs.append(cost)
        if not feasible:
            continue
        total = math.fsum(costs)
        if total < best_total:
            best_total = total
            best_combo = combo
    assert best_combo is not None  # every query has a feasible system
    return Assignment.from_choices(tuple(queries), best_combo)


def pareto_sweep(
    dist: WorkloadDistribution,
    axis: Axis,
    small: SystemProfile,
    large: SystemProfile,
    lambda_grid: Sequence[float],
    threshold_grid: Sequence[int],
    *,
    energy_scale_j: float | None = None,
    runtime_scale_s: float | None = None,
) -> SweepCurve:
    """Best threshold per scalarization weight, tracing the trade-off curve.

    One scale pair normalizes every weight (defaulting to the all-on-large
    totals), so points are comparable across the sweep: as the weight on
    energy grows, the chosen point's energy never rises and its runtime
    never falls.
    """
    if not lambda_grid:
        raise ValidationError("lambda grid must be non-empty")
    lams = sorted(set(lambda_grid))
    if lams[0] < 0.0 or lams[-1] > 1.0:
        raise ValidationError(f"lambda values must lie in [0, 1], got {lams}")
    if energy_scale_j is None or runtime_scale_s is None:
        baseline = single_system_outcome(dist, axis, large)
        if energy_scale_j is None:
            energy_scale_j = baseline.total_energy_j
        if runtime_scale_s is None:
            runtime_scale_s = baseline.total_runtime_s

    points: list[SweepPoint] = []
    baselines: dict[str, BaselinePoint] = {}
    for lam in lams:
        weights = CostWeights(lam, energy_scale_j, runtime_scale_s)
        curve, best = sweep_threshold(dist, axis, small, large, weights, threshold_grid)
        chosen = next(p for p in curve.points if p.threshold == best)
        points.append(
            SweepPoint(
                swept_value=lam,
                total_energy_j=chosen.total_energy_j,
                total_runtime_s=chosen.total_runtime_s,
                total_cost=chosen.total_cost,
                threshold=best,
            )
        )
        baselines = curve.baselines
    return SweepCurve(points=tuple(points), baselines=baselines)


def default_threshold_grid(
    small: SystemProfile, large: SystemProfile, axis: Axis
) -> list[int]:
    """Candidate cutoffs: zero (everything large) plus every profiled token
    count, trimmed to the small system's output cap when one applies.

    Intermediate values cannot change how a histogram keyed at the profiled
    counts partitions, so the profiled grid is a complete candidate set.
    """
    tokens = {
        point.tokens
        for profile in (small, large)
        for point in profile.curve_for(axis)
    }
    if axis is Axis.OUTPUT and small.max_output_tokens is not None:
        tokens = {t for t in tokens if t <= small.max_output_tokens}
    return [0] + sorted(tokens)
