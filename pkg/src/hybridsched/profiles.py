"""Per-system energy and runtime curves over token count.

A system profile holds two measured curves for one (system, model) pair:
energy-per-token and whole-request runtime versus input token count (output
length held fixed), and the same versus output token count (input held
fixed). Benchmarks sample token counts at powers of two, so evaluation
interpolates piecewise-linearly in log2(tokens); outside the measured grid
the nearest endpoint value is used rather than extrapolating.
"""

from __future__ import annotations

import bisect
import csv
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

from .errors import CapabilityError, ValidationError


class Axis(str, Enum):
    """Which token dimension of a query a curve varies."""

    INPUT = "input"
    OUTPUT = "output"


@dataclass(frozen=True)
class ProfilePoint:
    """One measured grid cell: mean energy/token and request runtime."""

    tokens: int
    energy_per_token_j: float
    runtime_s: float

    def __post_init__(self) -> None:
        if self.tokens < 1:
            raise ValidationError(f"tokens must be >= 1, got {self.tokens}")
        if self.energy_per_token_j <= 0:
            raise ValidationError(
                f"energy_per_token_j must be > 0, got {self.energy_per_token_j}"
            )
        if self.runtime_s <= 0:
            raise ValidationError(f"runtime_s must be > 0, got {self.runtime_s}")


@dataclass(frozen=True)
class SystemProfile:
    """Measured energy/runtime behaviour of one system running one model.

    ``max_output_tokens`` caps the output axis (e.g. a system that cannot
    generate beyond 512 tokens, or OOMs above some length); evaluations
    beyond the cap are rejected. One curve may be empty when only a single
    axis was benchmarked; evaluating the missing axis raises.
    """

    system_id: str
    model_id: str
    input_curve: tuple[ProfilePoint, ...]
    output_curve: tuple[ProfilePoint, ...]
    max_output_tokens: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "input_curve", tuple(self.input_curve))
        object.__setattr__(self, "output_curve", tuple(self.output_curve))
        if not self.system_id:
            raise ValidationError("system_id must be non-empty")
        if not self.input_curve and not self.output_curve:
            raise ValidationError(f"no profile data for system {self.system_id!r}")
        for axis, curve in ((Axis.INPUT, self.input_curve), (Axis.OUTPUT, self.output_curve)):
            for prev, cur in zip(curve, curve[1:]):
                if cur.tokens <= prev.tokens:
                    raise ValidationError(
                        f"{axis.value} curve of {self.system_id!r} must have "
                        f"strictly increasing token counts"
                    )
        if self.max_output_tokens is not None and self.max_output_tokens < 1:
            raise ValidationError(
                f"max_output_tokens must be >= 1, got {self.max_output_tokens}"
            )

    def curve_for(self, axis: Axis) -> tuple[ProfilePoint, ...]:
        return self.input_curve if axis is Axis.INPUT else self.output_curve


@dataclass(frozen=True)
class SystemSet:
    """The systems available for placement, keyed by system id."""

    profiles: dict[str, SystemProfile]

    def __post_init__(self) -> None:
        object.__setattr__(self, "profiles", dict(self.profiles))
        if not self.profiles:
            raise ValidationError("system set must be non-empty")
        for system_id, profile in self.profiles.items():
            if system_id != profile.system_id:
                raise ValidationError(
                    f"system set key {system_id!r} does not match profile id "
                    f"{profile.system_id!r}"
                )

    @classmethod
    def of(cls, *profiles: SystemProfile) -> "SystemSet":
        mapping: dict[str, SystemProfile] = {}
        for profile in profiles:
            if profile.system_id in mapping:
                raise ValidationError(f"duplicate system id {profile.system_id!r}")
            mapping[profile.system_id] = profile
        return cls(mapping)

    def ids(self) -> list[str]:
        return sorted(self.profiles)


def _eval_curve(
    profile: SystemProfile,
    axis: Axis,
    tokens: int,
    value: Callable[[ProfilePoint], float],
) -> float:
    if tokens < 1:
        raise ValidationError(f"token count must be >= 1, got {tokens}")
    if (
        axis is Axis.OUTPUT
        and profile.max_output_tokens is not None
        and tokens > profile.max_output_tokens
    ):
        raise CapabilityError(
            f"capability exceeded: {tokens} output tokens > cap "
            f"{profile.max_output_tokens} on system {profile.system_id!r}"
        )
    curve = profile.curve_for(axis)
    if not curve:
        raise ValidationError(
            f"no profile data on the {axis.value} axis for system "
            f"{profile.system_id!r}"
        )
    grid = [p.tokens for p in curve]
    k = bisect.bisect_right(grid, tokens) - 1
    if k < 0:
        return value(curve[0])
    if grid[k] == tokens or k == len(curve) - 1:
        return value(curve[k])
    lo, hi = curve[k], curve[k + 1]
    frac = (math.log2(tokens) - math.log2(lo.tokens)) / (
        math.log2(hi.tokens) - math.log2(lo.tokens)
    )
    return value(lo) + frac * (value(hi) - value(lo))


def eval_energy_per_token(profile: SystemProfile, axis: Axis, tokens: int) -> float:
    """Joules per token at ``tokens``, interpolated on the profiled grid."""
    return _eval_curve(profile, axis, tokens, lambda p: p.energy_per_token_j)


def eval_runtime(profile: SystemProfile, axis: Axis, tokens: int) -> float:
    """Whole-request runtime in seconds at ``tokens``, same interpolant."""
    return _eval_curve(profile, axis, tokens, lambda p: p.runtime_s)


@dataclass(frozen=True)
class BenchmarkRecord:
    """One benchmark trial: total energy and runtime for a grid cell."""

    system_id: str
    model_id: str
    axis: Axis
    tokens: int
    total_energy_j: float
    runtime_s: float
    trial: int = 0

    def __post_init__(self) -> None:
        if self.tokens < 1:
            raise ValidationError(f"invalid record: tokens must be >= 1, got {self.tokens}")
        if self.total_energy_j <= 0:
            raise ValidationError(
                f"invalid record: total_energy_j must be > 0, got {self.total_energy_j}"
            )
        if self.runtime_s <= 0:
            raise ValidationError(
                f"invalid record: runtime_s must be > 0, got {self.runtime_s}"
            )


def build_profile(
    records: Sequence[BenchmarkRecord], *, max_output_tokens: int | None = None
) -> SystemProfile:
    """Aggregate benchmark trials into a profile.

    Repeated trials of one (axis, tokens) cell are averaged; energy per
    token is the mean total energy divided by the cell's token count.
    Cells are sorted by token count regardless of record order.
    """
    if not records:
        raise ValidationError("no profile data: record list is empty")
    system_ids = sorted({r.system_id for r in records})
    if len(system_ids) > 1:
        raise ValidationError(f"mixed systems in record list: {system_ids}")
    cells: dict[tuple[Axis, int], list[BenchmarkRecord]] = {}
    for record in records:
        cells.setdefault((record.axis, record.tokens), []).append(record)

    def points(axis: Axis) -> list[ProfilePoint]:
        out = []
        for (cell_axis, tokens), trials in sorted(cells.items()):
            if cell_axis is not axis:
                continue
            mean_energy = math.fsum(t.total_energy_j for t in trials) / len(trials)
            mean_runtime = math.fsum(t.runtime_s for t in trials) / len(trials)
            out.append(ProfilePoint(tokens, mean_energy / tokens, mean_runtime))
        return out

    return SystemProfile(
        system_id=system_ids[0],
        model_id=records[0].model_id,
        input_curve=tuple(points(Axis.INPUT)),
        output_curve=tuple(points(Axis.OUTPUT)),
        max_output_tokens=max_output_tokens,
    )


# ---------------------------------------------------------------------------
# File formats: profile JSON and benchmark record CSV
# (system_id,model_id,axis,tokens,total_energy_j,runtime_s,trial).


def profile_to_dict(profile: SystemProfile) -> dict:
    def curve(points: tuple[ProfilePoint, ...]) -> list[dict]:
        return [
            {
                "tokens": p.tokens,
                "energy_per_token_j": p.energy_per_token_j,
                "runtime_s": p.runtime_s,
            }
            for p in points
        ]

    return {
        "system_id": profile.system_id,
        "model_id": profile.model_id,
        "max_output_tokens": profile.max_output_tokens,
        "input_curve": curve(profile.input_curve),
        "output_curve": curve(profile.output_curve),
    }


def write_profile_json(
    path: str | Path, profile: SystemProfile, *, extra: Mapping | None = None
) -> None:
    payload = profile_to_dict(profile)
    if extra:
        payload.update(extra)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_profile_json(path: str | Path) -> SystemProfile:
    """Load a profile JSON file; unknown keys are ignored."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"{path}: line {exc.lineno}: invalid JSON: {exc.msg}"
        ) from exc
    if not isinstance(data, dict):
        raise ValidationError(f"{path}: profile file must hold a JSON object")

    def curve(key: str) -> tuple[ProfilePoint, ...]:
        raw = data.get(key) or []
        try:
            return tuple(
                ProfilePoint(
                    int(p["tokens"]),
                    float(p["energy_per_token_j"]),
                    float(p["runtime_s"]),
                )
                for p in raw
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"{path}: bad {key} entry: {exc}") from exc

    try:
        cap = data.get("max_output_tokens")
        return SystemProfile(
            system_id=str(data["system_id"]),
            model_id=str(data.get("model_id", "")),
            input_curve=curve("input_curve"),
            output_curve=curve("output_curve"),
            max_output_tokens=None if cap is None else int(cap),
        )
    except KeyError as exc:
        raise ValidationError(f"{path}: missing key {exc}") from None


_RECORD_COLUMNS = (
    "system_id",
    "model_id",
    "axis",
    "tokens",
    "total_energy_j",
    "runtime_s",
    "trial",
)


def read_benchmark_csv(path: str | Path) -> list[BenchmarkRecord]:
    """Parse benchmark records; raises ValidationError with line numbers."""
    records: list[BenchmarkRecord] = []
    columns: dict[str, int] | None = None
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if columns is None:
                header = [cell.strip() for cell in row]
                missing = [c for c in _RECORD_COLUMNS[:-1] if c not in header]
                if missing:
                    raise ValidationError(
                        f"{path}: line {lineno}: missing column(s) {missing}"
                    )
                columns = {name: header.index(name) for name in header}
                continue
            try:
                axis = Axis(row[columns["axis"]].strip())
                trial = 0
                if "trial" in columns and len(row) > columns["trial"]:
                    raw = row[columns["trial"]].strip()
                    if raw:
                        trial = int(raw)
                records.append(
                    BenchmarkRecord(
                        system_id=row[columns["system_id"]].strip(),
                        model_id=row[columns["model_id"]].strip(),
                        axis=axis,
                        tokens=int(row[columns["tokens"]]),
                        total_energy_j=float(row[columns["total_energy_j"]]),
                        runtime_s=float(row[columns["runtime_s"]]),
                        trial=trial,
                    )
                )
            except (IndexError, ValueError) as exc:
                raise ValidationError(f"{path}: line {lineno}: {exc}") from exc
    if columns is None or not records:
        raise ValidationError(f"{path}: no benchmark records")
    return records
