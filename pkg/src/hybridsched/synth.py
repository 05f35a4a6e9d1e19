"""Synthetic system profiles with a controllable efficiency crossover.

Real measurements show a small low-power system beating a big accelerator
on joules per token for short requests and losing above some length. This
module builds profile pairs with exactly that shape so tests and the demo
can exercise the optimizer on a known answer: the small system's
energy/token steps from a low to a high plateau across one grid interval
after the crossover point (keeping the interpolant continuous), while the
large system is flat. Runtimes make the small system uniformly slower.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ValidationError
from .profiles import ProfilePoint, SystemProfile

# Per-token runtime of the large system; the small system scales off it.
LARGE_SECONDS_PER_TOKEN = 0.01


@dataclass(frozen=True)
class CrossoverSpec:
    """Shape parameters for a synthetic small/large profile pair.

    ``small_low < large_flat < small_high`` guarantees a genuine
    crossover: the small system wins at or below ``crossover_tokens`` and
    loses above it. ``runtime_ratio`` is the small system's request runtime
    relative to the large system's.
    """

    crossover_tokens: int
    small_low_j_per_tok: float
    small_high_j_per_tok: float
    large_flat_j_per_tok: float
    runtime_ratio: float = 4.0

    def __post_init__(self) -> None:
        if self.crossover_tokens < 1:
            raise ValidationError(
                f"crossover_tokens must be >= 1, got {self.crossover_tokens}"
            )
        for name in ("small_low_j_per_tok", "small_high_j_per_tok", "large_flat_j_per_tok"):
            if getattr(self, name) <= 0:
                raise ValidationError(f"{name} must be > 0, got {getattr(self, name)}")
        if not self.small_low_j_per_tok < self.large_flat_j_per_tok < self.small_high_j_per_tok:
            raise ValidationError(
                "no crossover: need small_low < large_flat < small_high, got "
                f"{self.small_low_j_per_tok} / {self.large_flat_j_per_tok} / "
                f"{self.small_high_j_per_tok}"
            )
        if self.runtime_ratio <= 0:
            raise ValidationError(f"runtime_ratio must be > 0, got {self.runtime_ratio}")


def make_crossover_profiles(
    spec: CrossoverSpec,
    grid: Sequence[int],
    *,
    small_id: str = "small",
    large_id: str = "large",
    model_id: str = "synthetic",
) -> tuple[SystemProfile, SystemProfile]:
    """Build the (small, large) profile pair described by ``spec``.

    Both systems get identical input and output curves over ``grid``. Grid
    points at or below the crossover take the small system's low value, the
    rest its high value; interpolation between adjacent grid points yields
    the one-interval ramp.
    """
    if not grid:
        raise ValidationError("token grid must be non-empty")
    ordered = list(grid)
    for prev, cur in zip(ordered, ordered[1:]):
        if cur <= prev:
            raise ValidationError("token grid must be sorted strictly ascending")
    if ordered[0] < 1:
        raise ValidationError(f"grid tokens must be >= 1, got {ordered[0]}")

    def points(energy_of, runtime_scale: float) -> tuple[ProfilePoint, ...]:
        return tuple(
            ProfilePoint(
                tokens=t,
                energy_per_token_j=energy_of(t),
                runtime_s=runtime_scale * LARGE_SECONDS_PER_TOKEN * t,
            )
            for t in ordered
        )

    def small_energy(tokens: int) -> float:
        if tokens <= spec.crossover_tokens:
            return spec.small_low_j_per_tok
        return spec.small_high_j_per_tok

    small_curve = points(small_energy, spec.runtime_ratio)
    large_curve = points(lambda _: spec.large_flat_j_per_tok, 1.0)
    small = SystemProfile(small_id, model_id, small_curve, small_curve)
    large = SystemProfile(large_id, model_id, large_curve, large_curve)
    return small, large
