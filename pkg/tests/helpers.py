"""Shared builders for test fixtures: tiny profiles, workloads, instances."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from hybridsched import (
    Axis,
    CostMode,
    CostWeights,
    ProfilePoint,
    QueryRecord,
    SystemProfile,
    WorkloadDistribution,
)

POWER_OF_TWO_GRID = (8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096)


def make_profile(
    system_id: str,
    points: Sequence[tuple[int, float, float]],
    *,
    output_points: Sequence[tuple[int, float, float]] | None = None,
    max_output_tokens: int | None = None,
    model_id: str = "bench-7b",
) -> SystemProfile:
    """Profile from (tokens, energy_per_token_j, runtime_s) triples."""
    curve = tuple(ProfilePoint(*p) for p in points)
    out = curve if output_points is None else tuple(ProfilePoint(*p) for p in output_points)
    return SystemProfile(system_id, model_id, curve, out, max_output_tokens)


def flat_profile(
    system_id: str,
    energy_per_token: float,
    runtime_s: float = 1.0,
    grid: Sequence[int] = (8, 4096),
    max_output_tokens: int | None = None,
) -> SystemProfile:
    """Constant energy/token and runtime across the grid."""
    return make_profile(
        system_id,
        [(t, energy_per_token, runtime_s) for t in grid],
        max_output_tokens=max_output_tokens,
    )


def dist_of(input_hist: dict[int, int], output_hist: dict[int, int] | None = None) -> WorkloadDistribution:
    return WorkloadDistribution(input_hist, output_hist or dict(input_hist))


def random_profile(rng: np.random.Generator, system_id: str) -> SystemProfile:
    """Random monotone-ish curves over a power-of-two grid."""
    grid = list(POWER_OF_TWO_GRID[: rng.integers(3, len(POWER_OF_TWO_GRID) + 1)])
    base_e = rng.uniform(0.1, 3.0)
    slope_e = rng.uniform(-0.5, 0.5)
    base_r = rng.uniform(0.05, 2.0)
    points = []
    for i, tokens in enumerate(grid):
        energy = max(0.01, base_e * (1.0 + slope_e * i / len(grid)))
        runtime = base_r * (1 + i)
        points.append((tokens, energy, runtime))
    return make_profile(system_id, points)


def random_queries(rng: np.random.Generator, count: int) -> list[QueryRecord]:
    return [
        QueryRecord(int(rng.integers(1, 2049)), int(rng.integers(1, 4097)))
        for _ in range(count)
    ]


def random_instance(
    rng: np.random.Generator, max_queries: int = 12, max_systems: int = 3
) -> tuple[list[QueryRecord], list[SystemProfile], CostWeights, CostMode]:
    """A random assignment-problem instance within the oracle bounds.

    Sized so that exhaustive enumeration stays cheap: with three systems the
    query count is capped at nine.
    """
    n_systems = int(rng.integers(1, max_systems + 1))
    cap = max_queries if n_systems <= 2 else 9
    n_queries = int(rng.integers(1, cap + 1))
    systems = [random_profile(rng, f"sys{chr(ord('a') + i)}") for i in range(n_systems)]
    queries = random_queries(rng, n_queries)
    weights = CostWeights(
        float(rng.uniform(0.0, 1.0)),
        float(rng.uniform(0.5, 2.0)),
        float(rng.uniform(0.5, 2.0)),
    )
    mode = list(CostMode)[int(rng.integers(0, len(CostMode)))]
    return queries, systems, weights, mode
