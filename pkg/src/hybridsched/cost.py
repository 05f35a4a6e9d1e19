"""Scalarized energy/runtime cost model and distribution-level aggregates.

The per-query cost combines energy and runtime into one number:

    cost = lambda * (E / energy_scale_j) + (1 - lambda) * (R / runtime_scale_s)

where E is the query's energy in joules (tokens times the profiled
joules/token) and R its runtime in seconds. Joules and seconds are not
commensurate, so the two scales normalize each term; a natural choice is
the workload's all-on-one-system totals, which makes both terms
dimensionless and O(1) (see ``weights_from_baseline``). The scales in play
are recorded in every exported result.

Distribution-level totals under a threshold policy are computed by summing
``tokens * frequency * energy_per_token`` per histogram key, routing each
key to the small or large system by the cutoff. Aggregate runtime is the
sum of per-query runtimes (device-seconds), not a makespan; no parallelism
is modeled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import CapabilityError, ValidationError
from .policy import Assignment, ThresholdPolicy
from .profiles import Axis, SystemProfile, SystemSet, eval_energy_per_token, eval_runtime
from .workload import QueryRecord, WorkloadDistribution


@dataclass(frozen=True)
class CostWeights:
    """Scalarization weight and unit-normalization scales.

    ``lam`` is the weight on the energy term; 1 optimizes energy only,
    0 runtime only.
    """

    lam: float
    energy_scale_j: float = 1.0
    runtime_scale_s: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.lam <= 1.0:
            raise ValidationError(f"lambda must lie in [0, 1], got {self.lam}")
        if self.energy_scale_j <= 0 or self.runtime_scale_s <= 0:
            raise ValidationError(
                f"scales must be > 0, got energy_scale_j={self.energy_scale_j}, "
                f"runtime_scale_s={self.runtime_scale_s}"
            )


class CostMode(str, Enum):
    """Which profiled slice prices a full (m, n) query.

    The measured data covers two one-dimensional slices of the joint
    (input, output) behaviour, so a query is priced on one axis at a time.
    ``separable`` combines both slices as E_in(m)*m + E_out(n)*n (runtimes
    added likewise); that joint model goes beyond what was measured, so
    results produced with it are labeled as an extension.
    """

    INPUT_SLICE = "input-slice"
    OUTPUT_SLICE = "output-slice"
    SEPARABLE = "separable"


def scalarize(energy_j: float, runtime_s: float, weights: CostWeights) -> float:
    """Collapse an (energy, runtime) pair into one cost."""
    return weights.lam * (energy_j / weights.energy_scale_j) + (1.0 - weights.lam) * (
        runtime_s / weights.runtime_scale_s
    )


def query_cost(
    profile: SystemProfile, axis: Axis, tokens: int, weights: CostWeights
) -> float:
    """Scalarized cost of a single request of ``tokens`` on one axis."""
    energy = tokens * eval_energy_per_token(profile, axis, tokens)
    runtime = eval_runtime(profile, axis, tokens)
    return scalarize(energy, runtime, weights)


def query_energy_runtime(
    profile: SystemProfile, query: QueryRecord, mode: CostMode
) -> tuple[float, float]:
    """(energy_j, runtime_s) of a query under the chosen pricing mode.

    A zero token count on a priced axis contributes nothing: the energy
    sums run over token counts >= 1, and there is no work to model.
    """
    energy = 0.0
    runtime = 0.0
    if mode in (CostMode.INPUT_SLICE, CostMode.SEPARABLE) and query.m > 0:
        energy += query.m * eval_energy_per_token(profile, Axis.INPUT, query.m)
        runtime += eval_runtime(profile, Axis.INPUT, query.m)
    if mode in (CostMode.OUTPUT_SLICE, CostMode.SEPARABLE) and query.n > 0:
        energy += query.n * eval_energy_per_token(profile, Axis.OUTPUT, query.n)
        runtime += eval_runtime(profile, Axis.OUTPUT, query.n)
    return energy, runtime


def query_mode_cost(
    profile: SystemProfile, query: QueryRecord, weights: CostWeights, mode: CostMode
) -> float:
    energy, runtime = query_energy_runtime(profile, query, mode)
    return scalarize(energy, runtime, weights)


@dataclass(frozen=True)
class SystemShare:
    """One system's slice of an aggregate outcome."""

    energy_j: float
    runtime_s: float
    query_count: int


@dataclass(frozen=True)
class AggregateOutcome:
    """Workload-level totals, broken down by system."""

    total_energy_j: float
    total_runtime_s: float
    per_system: dict[str, SystemShare]


def _accumulate(
    hist: dict[int, int],
    axis: Axis,
    route: "dict[str, SystemProfile]",
    side_of,
) -> AggregateOutcome:
    energy: dict[str, list[float]] = {sys_id: [] for sys_id in route}
    runtime: dict[str, list[float]] = {sys_id: [] for sys_id in route}
    count: dict[str, int] = {sys_id: 0 for sys_id in route}
    for tokens in sorted(hist):
        freq = hist[tokens]
        sys_id = side_of(tokens)
        count[sys_id] += freq
        if tokens == 0:
            continue  # no work on this axis; the sums start at one token
        profile = route[sys_id]
        energy[sys_id].append(tokens * freq * eval_energy_per_token(profile, axis, tokens))
        runtime[sys_id].append(freq * eval_runtime(profile, axis, tokens))
    per_system = {
        sys_id: SystemShare(math.fsum(energy[sys_id]), math.fsum(runtime[sys_id]), count[sys_id])
        for sys_id in route
    }
    return AggregateOutcome(
        total_energy_j=math.fsum(s.energy_j for s in per_system.values()),
        total_runtime_s=math.fsum(s.runtime_s for s in per_system.values()),
        per_system=per_system,
    )


def aggregate_energy(
    dist: WorkloadDistribution,
    axis: Axis,
    policy: ThresholdPolicy,
    small: SystemProfile,
    large: SystemProfile,
) -> AggregateOutcome:
    """Total energy and runtime of a workload routed by a threshold policy.

    Sums run over the histogram's present keys only; absent token counts
    have zero frequency and contribute nothing. Token counts beyond a
    system's output cap raise, naming the offending count.
    """
    if policy.axis is not axis:
        raise ValidationError(
            f"policy is for the {policy.axis.value} axis, asked to aggregate {axis.value}"
        )
    if policy.small_system != small.system_id or policy.large_system != large.system_id:
        raise ValidationError(
            f"policy routes {policy.small_system!r}/{policy.large_system!r} but got "
            f"profiles {small.system_id!r}/{large.system_id!r}"
        )
    if (
        axis is Axis.OUTPUT
        and small.max_output_tokens is not None
        and policy.threshold > small.max_output_tokens
    ):
        raise CapabilityError(
            f"capability exceeded: threshold {policy.threshold} is beyond the "
            f"{small.max_output_tokens}-token output cap of {small.system_id!r}"
        )
    hist = dist.input_hist if axis is Axis.INPUT else dist.output_hist
    route = {small.system_id: small, large.system_id: large}

    def side(tokens: int) -> str:
        return small.system_id if tokens <= policy.threshold else large.system_id

    return _accumulate(hist, axis, route, side)


def single_system_outcome(
    dist: WorkloadDistribution, axis: Axis, profile: SystemProfile
) -> AggregateOutcome:
    """Totals with the whole workload on one system (a single-system baseline)."""
    hist = dist.input_hist if axis is Axis.INPUT else dist.output_hist
    return _accumulate(hist, axis, {profile.system_id: profile}, lambda _: profile.system_id)


def weights_from_baseline(
    dist: WorkloadDistribution,
    axis: Axis,
    profile: SystemProfile,
    lam: float,
) -> CostWeights:
    """Weights whose scales are the all-on-``profile`` workload totals.

    Dividing by these makes the energy and runtime terms dimensionless and
    comparable: a cost of 1.0 matches running everything on the baseline
    system.
    """
    outcome = single_system_outcome(dist, axis, profile)
    return CostWeights(lam, outcome.total_energy_j, outcome.total_runtime_s)


def assignment_cost(
    assignment: Assignment,
    systems: SystemSet,
    weights: CostWeights,
    mode: CostMode,
) -> float:
    """Total scalarized cost of an explicit assignment.

    The assignment must partition its query list (each query served exactly
    once). The total is an order-independent exact sum, so it is invariant
    under permutations of the query list.
    """
    assignment.validate()
    costs = []
    for index in range(len(assignment.queries)):
        system_id = assignment.system_of(index)
        profile = systems.profiles.get(system_id)
        if profile is None:
            raise ValidationError(f"assignment uses unknown system {system_id!r}")
        costs.append(query_mode_cost(profile, assignment.queries[index], weights, mode))
    return math.fsum(costs)
