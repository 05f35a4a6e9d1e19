"""Synthetic crossover profiles."""

from __future__ import annotations

import pytest

from hybridsched import (
    Axis,
    CostWeights,
    CrossoverSpec,
    ValidationError,
    eval_energy_per_token,
    eval_runtime,
    make_crossover_profiles,
    sweep_threshold,
)
from helpers import dist_of

SPEC = CrossoverSpec(32, 0.5, 2.0, 1.0, runtime_ratio=4.0)
GRID = (8, 16, 32, 64, 128, 256)


class TestConstruction:
    def test_plateaus_and_flat_large(self):
        small, large = make_crossover_profiles(SPEC, GRID)
        assert eval_energy_per_token(small, Axis.INPUT, 8) == 0.5
        assert eval_energy_per_token(small, Axis.INPUT, 32) == 0.5
        assert eval_energy_per_token(small, Axis.INPUT, 256) == 2.0
        for tokens in GRID:
            assert eval_energy_per_token(large, Axis.INPUT, tokens) == 1.0

    def test_ramp_spans_one_grid_interval(self):
        small, _ = make_crossover_profiles(SPEC, GRID)
        between = eval_energy_per_token(small, Axis.INPUT, 45)  # inside (32, 64)
        assert 0.5 < between < 2.0

    def test_small_system_is_slower_by_the_ratio(self):
        small, large = make_crossover_profiles(SPEC, GRID)
        for tokens in GRID:
            assert eval_runtime(small, Axis.INPUT, tokens) == pytest.approx(
                4.0 * eval_runtime(large, Axis.INPUT, tokens), rel=1e-12
            )

    def test_crossover_beyond_the_grid_keeps_small_cheap_everywhere(self):
        small, large = make_crossover_profiles(
            CrossoverSpec(999, 0.5, 2.0, 1.0), GRID
        )
        for tokens in GRID:
            assert eval_energy_per_token(small, Axis.INPUT, tokens) == 0.5

    def test_identical_curves_on_both_axes(self):
        small, large = make_crossover_profiles(SPEC, GRID)
        assert small.input_curve == small.output_curve
        assert large.input_curve == large.output_curve

    def test_deterministic(self):
        assert make_crossover_profiles(SPEC, GRID) == make_crossover_profiles(SPEC, GRID)

    def test_custom_ids(self):
        small, large = make_crossover_profiles(SPEC, GRID, small_id="m1", large_id="dc")
        assert (small.system_id, large.system_id) == ("m1", "dc")


class TestSpecValidation:
    def test_no_crossover_rejected(self):
        with pytest.raises(ValidationError, match="no crossover"):
            CrossoverSpec(32, 1.0, 2.0, 0.9)  # flat below low
        with pytest.raises(ValidationError, match="no crossover"):
            CrossoverSpec(32, 1.5, 1.0, 1.2)  # high below low

    def test_positive_parameters_required(self):
        with pytest.raises(ValidationError):
            CrossoverSpec(0, 0.5, 2.0, 1.0)
        with pytest.raises(ValidationError):
            CrossoverSpec(32, 0.5, 2.0, 1.0, runtime_ratio=0.0)

    def test_grid_must_ascend(self):
        with pytest.raises(ValidationError, match="ascending"):
            make_crossover_profiles(SPEC, [8, 8, 16])
        with pytest.raises(ValidationError, match="non-empty"):
            make_crossover_profiles(SPEC, [])


def test_sweep_recovers_the_configured_crossover():
    small, large = make_crossover_profiles(SPEC, GRID)
    workload = dist_of({8: 30, 16: 20, 32: 15, 64: 10, 128: 5, 256: 2})
    curve, best = sweep_threshold(
        workload, Axis.INPUT, small, large, CostWeights(1.0), [0, *GRID]
    )
    assert best == SPEC.crossover_tokens
    # Exhaustive check over the returned points.
    assert min(curve.points, key=lambda p: p.total_cost).threshold == 32
