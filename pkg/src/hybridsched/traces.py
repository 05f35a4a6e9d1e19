"""Reduction of recorded power traces to total energy.

A trace is a sequence of timestamped power samples, each tagged with the
hardware channel it was read from ("gpu", "package-0", "core-7", ...).
Energy is integrated from the recorded timestamps: each sample's power is
charged over the interval since the previous sample on the same channel,
so the first sample of every channel contributes nothing. Four aggregation
rules cover the supported recorder families:

* ``gpu-sum`` — plain per-channel integration (NVML-style GPU counters),
* ``weighted-cpu`` — per-sample energy-impact-factor weighting
  (powermetrics-style CPU traces, where the factor apportions whole-CPU
  power to the monitored process),
* ``rapl-packages`` — per-package idle-power subtraction (RAPL domains),
* ``per-core`` — restriction to the cores that ran the workload
  (uProf-timechart-style per-core recorders).

All functions are pure and all types immutable, so concurrent use is safe.
Live polling of the recorders themselves is out of scope; this module
consumes their logs as files.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import ValidationError


class PlatformKind(str, Enum):
    """Which aggregation rule a recorded trace calls for."""

    GPU_SUM = "gpu-sum"
    WEIGHTED_CPU = "weighted-cpu"
    RAPL_PACKAGES = "rapl-packages"
    PER_CORE = "per-core"


@dataclass(frozen=True)
class PowerSample:
    """One timestamped power reading on a named channel.

    ``impact_factor`` is the optional per-sample weight in [0, 1] used by
    the weighted-cpu rule; other rules ignore it.
    """

    elapsed_s: float
    power_w: float
    channel: str = "gpu"
    impact_factor: float | None = None

    def __post_init__(self) -> None:
        if self.elapsed_s < 0:
            raise ValidationError(f"elapsed_s must be >= 0, got {self.elapsed_s}")
        if self.power_w < 0:
            raise ValidationError(f"power_w must be >= 0, got {self.power_w}")
        if self.impact_factor is not None and not 0.0 <= self.impact_factor <= 1.0:
            raise ValidationError(
                f"impact_factor must lie in [0, 1], got {self.impact_factor}"
            )
        if not self.channel:
            raise ValidationError("channel must be a non-empty string")


@dataclass(frozen=True)
class TraceMeta:
    """Recorder metadata accompanying a trace file.

    ``idle_power_w`` maps package channels to their average idle draw and is
    consumed only by the rapl-packages rule. ``sample_interval_s`` is the
    recorder's nominal polling interval; it is documentation only —
    integration always uses the actual timestamps, which tolerates jittery
    recorders. ``active_cores`` optionally names the channels the per-core
    rule should keep (core residency is tracked by the recorder, not here).
    """

    platform_kind: PlatformKind
    idle_power_w: Mapping[str, float] = field(default_factory=dict)
    sample_interval_s: float | None = None
    active_cores: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        for channel, watts in self.idle_power_w.items():
            if watts < 0:
                raise ValidationError(
                    f"idle power for channel {channel!r} must be >= 0, got {watts}"
                )


@dataclass(frozen=True)
class EnergyResult:
    """Total energy attributed to a trace, broken down by channel.

    ``total_j`` can be negative after idle subtraction; negative
    per-interval contributions are kept as-is (clamping would silently bias
    totals) and counted in ``negative_intervals`` for diagnostics.
    """

    total_j: float
    per_channel_j: dict[str, float]
    duration_s: float
    negative_intervals: int = 0


def _chains(samples: Sequence[PowerSample]) -> dict[str, list[PowerSample]]:
    """Group samples by channel, enforcing per-channel timestamp order."""
    if not samples:
        raise ValidationError("empty trace")
    chains: dict[str, list[PowerSample]] = {}
    for sample in samples:
        chains.setdefault(sample.channel, []).append(sample)
    for channel, chain in chains.items():
        for prev, cur in zip(chain, chain[1:]):
            if cur.elapsed_s <= prev.elapsed_s:
                raise ValidationError(
                    f"timestamp order violated on channel {channel!r}: "
                    f"{cur.elapsed_s} follows {prev.elapsed_s}"
                )
    return chains


def _result(
    samples: Sequence[PowerSample],
    per_channel_j: dict[str, float],
    negative_intervals: int = 0,
) -> EnergyResult:
    times = [s.elapsed_s for s in samples]
    return EnergyResult(
        total_j=math.fsum(per_channel_j.values()),
        per_channel_j=per_channel_j,
        duration_s=max(times) - min(times),
        negative_intervals=negative_intervals,
    )


def integrate_gpu_sum(samples: Sequence[PowerSample]) -> EnergyResult:
    """Plain power integral: per channel, sum of power times preceding interval."""
    per_channel: dict[str, float] = {}
    for channel, chain in _chains(samples).items():
        per_channel[channel] = math.fsum(
            cur.power_w * (cur.elapsed_s - prev.elapsed_s)
            for prev, cur in zip(chain, chain[1:])
        )
    return _result(samples, per_channel)


def integrate_weighted_cpu(samples: Sequence[PowerSample]) -> EnergyResult:
    """Impact-factor-weighted integral; every sample must carry a factor."""
    for sample in samples:
        if sample.impact_factor is None:
            raise ValidationError(
                f"missing impact factor on channel {sample.channel!r} "
                f"at t={sample.elapsed_s}"
            )
    per_channel: dict[str, float] = {}
    for channel, chain in _chains(samples).items():
        per_channel[channel] = math.fsum(
            cur.impact_factor * cur.power_w * (cur.elapsed_s - prev.elapsed_s)
            for prev, cur in zip(chain, chain[1:])
        )
    return _result(samples, per_channel)


def integrate_rapl(samples: Sequence[PowerSample], meta: TraceMeta) -> EnergyResult:
    """Idle-subtracted integral over package channels.

    Each package channel needs an idle baseline in ``meta.idle_power_w``.
    Intervals where measured power dips below idle contribute negative
    energy; they are counted, not clamped.
    """
    if meta.platform_kind is not PlatformKind.RAPL_PACKAGES:
        raise ValidationError(
            f"platform kind must be '{PlatformKind.RAPL_PACKAGES.value}', "
            f"got '{meta.platform_kind.value}'"
        )
    chains = _chains(samples)
    for channel in chains:
        if channel not in meta.idle_power_w:
            raise ValidationError(f"missing idle baseline for channel {channel!r}")
    per_channel: dict[str, float] = {}
    negative = 0
    for channel, chain in chains.items():
        idle = meta.idle_power_w[channel]
        terms = []
        for prev, cur in zip(chain, chain[1:]):
            term = (cur.power_w - idle) * (cur.elapsed_s - prev.elapsed_s)
            if term < 0:
                negative += 1
            terms.append(term)
        per_channel[channel] = math.fsum(terms)
    return _result(samples, per_channel, negative)


def integrate_per_core(
    samples: Sequence[PowerSample], active_cores: Iterable[str]
) -> EnergyResult:
    """Plain integral restricted to the given core channels."""
    active = set(active_cores)
    if not active:
        raise ValidationError("active core set must be non-empty")
    chains = _chains(samples)
    for core in sorted(active):
        if core not in chains:
            raise ValidationError(f"unknown core {core!r}: not present in trace")
    per_channel: dict[str, float] = {}
    for channel, chain in chains.items():
        if channel not in active:
            continue
        per_channel[channel] = math.fsum(
            cur.power_w * (cur.elapsed_s - prev.elapsed_s)
            for prev, cur in zip(chain, chain[1:])
        )
    return _result(samples, per_channel)


def reduce_trace(samples: Sequence[PowerSample], meta: TraceMeta) -> EnergyResult:
    """Dispatch a trace to the integrator selected by ``meta.platform_kind``.

    For per-core traces the active set comes from ``meta.active_cores``,
    defaulting to every channel present.
    """
    kind = meta.platform_kind
    if kind is PlatformKind.GPU_SUM:
        return integrate_gpu_sum(samples)
    if kind is PlatformKind.WEIGHTED_CPU:
        return integrate_weighted_cpu(samples)
    if kind is PlatformKind.RAPL_PACKAGES:
        return integrate_rapl(samples, meta)
    active = meta.active_cores
    if active is None:
        active = tuple(sorted({s.channel for s in samples}))
    return integrate_per_core(samples, active)


# ---------------------------------------------------------------------------
# File formats: trace CSV (elapsed_s,channel,power_w[,impact_factor]) and
# meta JSON ({"platform_kind": ..., "idle_power_w": {...}, ...}).

_REQUIRED_COLUMNS = ("elapsed_s", "channel", "power_w")


def read_trace_csv(path: str | Path) -> list[PowerSample]:
    """Parse a trace CSV; raises ValidationError with the offending line number."""
    samples: list[PowerSample] = []
    columns: dict[str, int] | None = None
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if columns is None:
                header = [cell.strip() for cell in row]
                missing = [c for c in _REQUIRED_COLUMNS if c not in header]
                if missing:
                    raise ValidationError(
                        f"{path}: line {lineno}: missing column(s) {missing}"
                    )
                columns = {name: header.index(name) for name in header}
                continue
            try:
                elapsed = float(row[columns["elapsed_s"]])
                power = float(row[columns["power_w"]])
                channel = row[columns["channel"]].strip()
                impact: float | None = None
                if "impact_factor" in columns and len(row) > columns["impact_factor"]:
                    raw = row[columns["impact_factor"]].strip()
                    if raw:
                        impact = float(raw)
                samples.append(PowerSample(elapsed, power, channel, impact))
            except (IndexError, ValueError) as exc:
                raise ValidationError(f"{path}: line {lineno}: {exc}") from exc
    if columns is None:
        raise ValidationError(f"{path}: empty trace")
    if not samples:
        raise ValidationError(f"{path}: empty trace")
    return samples


def write_trace_csv(path: str | Path, samples: Sequence[PowerSample]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["elapsed_s", "channel", "power_w", "impact_factor"])
        for s in samples:
            factor = "" if s.impact_factor is None else repr(s.impact_factor)
            writer.writerow([repr(s.elapsed_s), s.channel, repr(s.power_w), factor])


def read_trace_meta(path: str | Path) -> TraceMeta:
    """Parse a meta JSON file describing how a trace should be reduced."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"{path}: line {exc.lineno}: invalid JSON: {exc.msg}"
        ) from exc
    if not isinstance(data, dict):
        raise ValidationError(f"{path}: meta file must hold a JSON object")
    try:
        kind = PlatformKind(data["platform_kind"])
    except KeyError:
        raise ValidationError(f"{path}: missing 'platform_kind'") from None
    except ValueError:
        allowed = ", ".join(k.value for k in PlatformKind)
        raise ValidationError(
            f"{path}: unknown platform_kind {data['platform_kind']!r} "
            f"(expected one of: {allowed})"
        ) from None
    idle_raw = data.get("idle_power_w") or {}
    if not isinstance(idle_raw, dict):
        raise ValidationError(f"{path}: 'idle_power_w' must be an object")
    try:
        idle = {str(channel): float(watts) for channel, watts in idle_raw.items()}
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{path}: bad idle power value: {exc}") from exc
    interval = data.get("sample_interval_s")
    active = data.get("active_cores")
    return TraceMeta(
        platform_kind=kind,
        idle_power_w=idle,
        sample_interval_s=None if interval is None else float(interval),
        active_cores=None if active is None else tuple(str(c) for c in active),
    )
