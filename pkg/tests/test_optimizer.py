"""Threshold sweeps, optimal/brute-force assignment, and the lambda sweep."""

from __future__ import annotations

import math
from itertools import product

import numpy as np
import pytest

from hybridsched import (
    Assignment,
    Axis,
    CostMode,
    CostWeights,
    CrossoverSpec,
    InfeasibleError,
    OracleBoundError,
    QueryRecord,
    SystemSet,
    ValidationError,
    assignment_cost,
    brute_force_assignment,
    default_threshold_grid,
    eval_energy_per_token,
    eval_runtime,
    make_crossover_profiles,
    optimal_assignment,
    pareto_sweep,
    query_mode_cost,
    sweep_threshold,
    weights_from_baseline,
)
from helpers import dist_of, flat_profile, make_profile, random_instance

GRID = (8, 16, 32, 64, 128)
CROSS_SMALL, CROSS_LARGE = make_crossover_profiles(
    CrossoverSpec(32, 0.5, 2.0, 1.0, runtime_ratio=4.0), GRID
)
TWO_SIDED = dist_of({8: 40, 16: 25, 32: 20, 64: 15, 128: 10})


def point_for(curve, threshold):
    return next(p for p in curve.points if p.threshold == threshold)


class TestSweepThreshold:
    def test_recovers_the_crossover(self):
        weights = CostWeights(1.0)
        grid = [0, 8, 16, 32, 64]
        curve, best = sweep_threshold(
            TWO_SIDED, Axis.INPUT, CROSS_SMALL, CROSS_LARGE, weights, grid
        )
        assert best == 32
        hybrid = point_for(curve, best)
        assert hybrid.total_energy_j < curve.baselines["small"].energy_j
        assert hybrid.total_energy_j < curve.baselines["large"].energy_j

        # Exhaustive cross-check: recompute each total straight from the
        # histogram and the interpolated curves.
        for point in curve.points:
            expected = math.fsum(
                tokens
                * freq
                * eval_energy_per_token(
                    CROSS_SMALL if tokens <= point.threshold else CROSS_LARGE,
                    Axis.INPUT,
                    tokens,
                )
                for tokens, freq in TWO_SIDED.input_hist.items()
            )
            assert point.total_energy_j == pytest.approx(expected, rel=1e-12)
        best_by_hand = min(curve.points, key=lambda p: p.total_cost).threshold
        assert best == best_by_hand

    def test_dominant_small_system_takes_everything(self):
        small = flat_profile("small", 0.5, grid=(8, 128))
        large = flat_profile("large", 1.0, grid=(8, 128))
        curve, best = sweep_threshold(
            TWO_SIDED, Axis.INPUT, small, large, CostWeights(1.0), [0, 8, 64, 128]
        )
        assert best == 128  # the largest grid value
        assert point_for(curve, best).total_energy_j == curve.baselines["small"].energy_j

    def test_zero_grid_recovers_the_all_large_baseline(self):
        curve, best = sweep_threshold(
            TWO_SIDED, Axis.INPUT, CROSS_SMALL, CROSS_LARGE, CostWeights(1.0), [0]
        )
        assert best == 0
        assert point_for(curve, 0).total_energy_j == curve.baselines["large"].energy_j

    def test_best_is_the_minimum_of_the_points(self):
        curve, best = sweep_threshold(
            TWO_SIDED, Axis.INPUT, CROSS_SMALL, CROSS_LARGE, CostWeights(0.7),
            [0, 8, 16, 32, 64, 128],
        )
        assert point_for(curve, best).total_cost == min(p.total_cost for p in curve.points)

    def test_ties_break_toward_the_smaller_threshold(self):
        # Identical systems: every cutoff costs the same.
        twin_a = flat_profile("a", 1.0, grid=(8, 128))
        twin_b = flat_profile("b", 1.0, grid=(8, 128))
        _, best = sweep_threshold(
            TWO_SIDED, Axis.INPUT, twin_a, twin_b, CostWeights(1.0), [64, 8, 32]
        )
        assert best == 8

    def test_grid_values_beyond_the_output_cap_are_skipped(self):
        capped = flat_profile("small", 0.5, grid=(8, 128), max_output_tokens=64)
        large = flat_profile("large", 1.0, grid=(8, 128))
        dist = dist_of({8: 5, 32: 5})
        with pytest.warns(UserWarning, match="skipping threshold 128"):
            curve, best = sweep_threshold(
                dist, Axis.OUTPUT, capped, large, CostWeights(1.0), [8, 128]
            )
        assert [p.threshold for p in curve.points] == [8]
        assert best == 8

    def test_all_points_infeasible_raises(self):
        capped = flat_profile("small", 0.5, grid=(8, 128), max_output_tokens=16)
        large = flat_profile("large", 1.0, grid=(8, 128))
        with pytest.warns(UserWarning):
            with pytest.raises(InfeasibleError, match="no feasible threshold"):
                sweep_threshold(
                    dist_of({8: 5}), Axis.OUTPUT, capped, large, CostWeights(1.0), [32, 64]
                )

    def test_empty_grid_rejected(self):
        with pytest.raises(ValidationError, match="non-empty"):
            sweep_threshold(
                TWO_SIDED, Axis.INPUT, CROSS_SMALL, CROSS_LARGE, CostWeights(1.0), []
            )

    def test_infeasible_baseline_is_marked(self):
        capped = flat_profile("small", 0.5, grid=(8, 128), max_output_tokens=16)
        large = flat_profile("large", 1.0, grid=(8, 128))
        curve, _ = sweep_threshold(
            dist_of({8: 5, 64: 5}), Axis.OUTPUT, capped, large, CostWeights(1.0), [0, 8]
        )
        assert not curve.baselines["small"].feasible
        assert curve.baselines["small"].energy_j == math.inf
        assert curve.baselines["large"].feasible


class TestDefaultGrid:
    def test_profiled_tokens_plus_zero(self):
        assert default_threshold_grid(CROSS_SMALL, CROSS_LARGE, Axis.INPUT) == [
            0, 8, 16, 32, 64, 128,
        ]

    def test_output_grid_trimmed_to_the_small_cap(self):
        capped = flat_profile("small", 0.5, grid=(8, 64, 1024), max_output_tokens=512)
        large = flat_profile("large", 1.0, grid=(8, 2048))
        assert default_threshold_grid(capped, large, Axis.OUTPUT) == [0, 8, 64]


class TestOptimalAssignment:
    def test_single_system_identity(self):
        queries = [QueryRecord(8, 8), QueryRecord(64, 64)]
        systems = SystemSet.of(flat_profile("only", 1.0))
        assignment = optimal_assignment(queries, systems, CostWeights(1.0), CostMode.INPUT_SLICE)
        assert assignment.groups == {"only": (0, 1)}

    def test_cost_ties_break_lexicographically(self):
        systems = SystemSet.of(flat_profile("zeta", 1.0), flat_profile("alpha", 1.0))
        assignment = optimal_assignment(
            [QueryRecord(8, 8)], systems, CostWeights(1.0), CostMode.INPUT_SLICE
        )
        assert assignment.system_of(0) == "alpha"

    def test_matches_exhaustive_enumeration(self):
        rng = np.random.default_rng(1234)
        systems_list = [
            make_profile("efficient", [(8, 0.4, 2.0), (256, 1.8, 9.0)]),
            make_profile("fast", [(8, 1.2, 0.3), (256, 0.9, 1.1)]),
        ]
        systems = SystemSet.of(*systems_list)
        queries = [
            QueryRecord(int(rng.integers(1, 1024)), int(rng.integers(1, 1024)))
            for _ in range(10)
        ]
        weights = CostWeights(0.6, 3.0, 2.0)
        assignment = optimal_assignment(queries, systems, weights, CostMode.SEPARABLE)
        total = assignment_cost(assignment, systems, weights, CostMode.SEPARABLE)

        # Oracle written out in the test: enumerate all 2^10 assignments.
        ids = systems.ids()
        best = math.inf
        for combo in product(ids, repeat=len(queries)):
            cost = math.fsum(
                query_mode_cost(systems.profiles[sid], q, weights, CostMode.SEPARABLE)
                for sid, q in zip(combo, queries)
            )
            best = min(best, cost)
        assert total == best

    def test_agrees_with_brute_force_oracle(self):
        rng = np.random.default_rng(77)
        for _ in range(10):
            queries, profiles, weights, mode = random_instance(rng)
            systems = SystemSet.of(*profiles)
            fast = optimal_assignment(queries, systems, weights, mode)
            slow = brute_force_assignment(queries, systems, weights, mode)
            assert assignment_cost(fast, systems, weights, mode) == assignment_cost(
                slow, systems, weights, mode
            )

    def test_unservable_query_raises_with_its_index(self):
        capped = flat_profile("small", 1.0, grid=(8, 64), max_output_tokens=16)
        systems = SystemSet.of(capped)
        with pytest.raises(InfeasibleError, match="unservable query 1"):
            optimal_assignment(
                [QueryRecord(8, 8), QueryRecord(8, 64)],
                systems,
                CostWeights(1.0),
                CostMode.OUTPUT_SLICE,
            )

    def test_beats_every_threshold_policy(self):
        # The small system is cheaper only for LONG requests here, a shape
        # cutoff routing (small gets the short side) cannot express.
        small = make_profile("small", [(8, 2.0, 1.0), (256, 0.4, 1.0)])
        large = make_profile("large", [(8, 0.5, 1.0), (256, 2.0, 1.0)])
        systems = SystemSet.of(small, large)
        queries = [QueryRecord(8, 1), QueryRecord(256, 1)]
        weights = CostWeights(1.0)
        optimal = assignment_cost(
            optimal_assignment(queries, systems, weights, CostMode.INPUT_SLICE),
            systems,
            weights,
            CostMode.INPUT_SLICE,
        )
        induced_costs = []
        for threshold in (0, 8, 256):
            choices = ["small" if q.m <= threshold else "large" for q in queries]
            induced = Assignment.from_choices(tuple(queries), choices)
            induced_costs.append(
                assignment_cost(induced, systems, weights, CostMode.INPUT_SLICE)
            )
        assert optimal < min(induced_costs)


class TestBruteForce:
    def test_size_bound_enforced(self):
        systems = SystemSet.of(flat_profile("only", 1.0))
        queries = [QueryRecord(8, 8)] * 13
        with pytest.raises(OracleBoundError, match="oracle bound"):
            brute_force_assignment(queries, systems, CostWeights(1.0), CostMode.INPUT_SLICE)

    def test_empty_query_list_costs_nothing(self):
        systems = SystemSet.of(flat_profile("only", 1.0))
        assignment = brute_force_assignment([], systems, CostWeights(1.0), CostMode.INPUT_SLICE)
        assert assignment.queries == ()
        assert assignment_cost(assignment, systems, CostWeights(1.0), CostMode.INPUT_SLICE) == 0.0

    def test_no_enumerated_assignment_is_cheaper(self):
        systems = SystemSet.of(
            make_profile("a", [(8, 0.4, 2.0), (64, 1.6, 5.0)]),
            make_profile("b", [(8, 1.0, 0.5), (64, 0.8, 1.0)]),
        )
        queries = [QueryRecord(8, 8), QueryRecord(64, 8), QueryRecord(32, 8)]
        weights = CostWeights(0.5)
        best = brute_force_assignment(queries, systems, weights, CostMode.INPUT_SLICE)
        best_cost = assignment_cost(best, systems, weights, CostMode.INPUT_SLICE)
        for combo in product(systems.ids(), repeat=len(queries)):
            other = Assignment.from_choices(tuple(queries), combo)
            assert best_cost <= assignment_cost(other, systems, weights, CostMode.INPUT_SLICE)


class TestParetoSweep:
    def test_endpoints_are_the_single_objective_optima(self):
        grid = [0, 8, 16, 32, 64, 128]
        curve = pareto_sweep(
            TWO_SIDED, Axis.INPUT, CROSS_SMALL, CROSS_LARGE, [0.0, 1.0], grid
        )
        by_lam = {p.swept_value: p for p in curve.points}
        # Energy-only picks the crossover; runtime-only avoids the slow
        # small system entirely.
        assert by_lam[1.0].threshold == 32
        assert by_lam[0.0].threshold == 0

    def test_energy_falls_and_runtime_rises_with_lambda(self):
        lams = [i / 10 for i in range(11)]
        curve = pareto_sweep(
            TWO_SIDED, Axis.INPUT, CROSS_SMALL, CROSS_LARGE, lams, [0, 8, 16, 32, 64, 128]
        )
        for earlier, later in zip(curve.points, curve.points[1:]):
            assert later.total_energy_j <= earlier.total_energy_j
            assert later.total_runtime_s >= earlier.total_runtime_s

    def test_identical_systems_make_lambda_irrelevant(self):
        twin_a = flat_profile("a", 1.0, grid=(8, 128))
        twin_b = flat_profile("b", 1.0, grid=(8, 128))
        curve = pareto_sweep(
            TWO_SIDED, Axis.INPUT, twin_a, twin_b, [0.0, 0.5, 1.0], [0, 8, 64]
        )
        energies = {p.total_energy_j for p in curve.points}
        runtimes = {p.total_runtime_s for p in curve.points}
        assert len(energies) == 1 and len(runtimes) == 1

    def test_points_ordered_by_lambda(self):
        curve = pareto_sweep(
            TWO_SIDED, Axis.INPUT, CROSS_SMALL, CROSS_LARGE, [1.0, 0.0, 0.5], [0, 32]
        )
        assert [p.swept_value for p in curve.points] == [0.0, 0.5, 1.0]

    def test_lambda_out_of_range_rejected(self):
        with pytest.raises(ValidationError, match="lambda"):
            pareto_sweep(
                TWO_SIDED, Axis.INPUT, CROSS_SMALL, CROSS_LARGE, [0.0, 1.2], [0, 32]
            )


class TestScaleInvariance:
    def test_scaling_every_energy_curve_preserves_argmins(self):
        def scaled(profile, k):
            return make_profile(
                profile.system_id,
                [(p.tokens, k * p.energy_per_token_j, p.runtime_s) for p in profile.input_curve],
            )

        weights = CostWeights(1.0)
        grid = [0, 8, 16, 32, 64, 128]
        _, best = sweep_threshold(
            TWO_SIDED, Axis.INPUT, CROSS_SMALL, CROSS_LARGE, weights, grid
        )
        _, best_scaled = sweep_threshold(
            TWO_SIDED, Axis.INPUT, scaled(CROSS_SMALL, 7.0), scaled(CROSS_LARGE, 7.0),
            weights, grid,
        )
        assert best == best_scaled

        queries = [QueryRecord(m, 8) for m in (4, 8, 30, 33, 100, 128)]
        plain = optimal_assignment(
            queries, SystemSet.of(CROSS_SMALL, CROSS_LARGE), weights, CostMode.INPUT_SLICE
        )
        rescaled = optimal_assignment(
            queries,
            SystemSet.of(scaled(CROSS_SMALL, 7.0), scaled(CROSS_LARGE, 7.0)),
            weights,
            CostMode.INPUT_SLICE,
        )
        assert plain.groups == rescaled.groups


class TestWeightsIntegration:
    def test_baseline_weights_put_the_all_large_cost_at_one(self):
        weights = weights_from_baseline(TWO_SIDED, Axis.INPUT, CROSS_LARGE, 0.5)
        curve, _ = sweep_threshold(
            TWO_SIDED, Axis.INPUT, CROSS_SMALL, CROSS_LARGE, weights, [0]
        )
        assert point_for(curve, 0).total_cost == pytest.approx(1.0, rel=1e-12)
