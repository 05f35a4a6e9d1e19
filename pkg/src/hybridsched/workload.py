"""Token-count distributions of query workloads.

Queries arrive pre-tokenized as (input tokens, output tokens) pairs; the
counts are the only workload statistic the cost model needs, so no text or
tokenizer is involved. A workload is summarized by two frequency
histograms, one per token axis. A seeded log-normal generator provides
synthetic workloads with the heavy right tail typical of prompt datasets.
"""

from __future__ import annotations

import csv
import json
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import ValidationError

MAX_SYNTH_TOKENS = 4096


@dataclass(frozen=True)
class QueryRecord:
    """One query: m input tokens, n output tokens. Empty queries rejected."""

    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 0 or self.n < 0:
            raise ValidationError(f"token counts must be >= 0, got ({self.m}, {self.n})")
        if self.m == 0 and self.n == 0:
            raise ValidationError("empty query: m and n are both zero")


@dataclass(frozen=True)
class WorkloadDistribution:
    """Frequency histograms of input and output token counts."""

    input_hist: dict[int, int]
    output_hist: dict[int, int]

    def __post_init__(self) -> None:
        for name, hist in (("input", self.input_hist), ("output", self.output_hist)):
            if not hist:
                raise ValidationError(f"empty workload: {name} histogram has no entries")
            for tokens, count in hist.items():
                if tokens < 0:
                    raise ValidationError(f"{name} histogram key must be >= 0, got {tokens}")
                if count < 1:
                    raise ValidationError(
                        f"{name} histogram count must be >= 1, got {count} at {tokens}"
                    )
        object.__setattr__(self, "input_hist", dict(sorted(self.input_hist.items())))
        object.__setattr__(self, "output_hist", dict(sorted(self.output_hist.items())))

    @property
    def max_input(self) -> int:
        return max(self.input_hist)

    @property
    def max_output(self) -> int:
        return max(self.output_hist)

    @property
    def total_queries(self) -> int:
        return sum(self.input_hist.values())


def ingest_counts(rows: Sequence[QueryRecord]) -> WorkloadDistribution:
    """Histogram a query list over both token axes."""
    if not rows:
        raise ValidationError("empty workload")
    return WorkloadDistribution(
        input_hist=dict(Counter(row.m for row in rows)),
        output_hist=dict(Counter(row.n for row in rows)),
    )


def synth_workload(
    count: int, log_mean: float, log_sigma: float, seed: int
) -> list[QueryRecord]:
    """Draw a reproducible synthetic workload.

    Input and output counts are drawn independently from a log-normal with
    the given log-space mean and sigma, rounded to integers and clamped to
    [1, 4096]. All input counts are drawn before all output counts, so the
    result is bit-for-bit reproducible for a given (seed, parameters).
    """
    if count < 1:
        raise ValidationError(f"count must be >= 1, got {count}")
    if log_sigma <= 0:
        raise ValidationError(f"log_sigma must be > 0, got {log_sigma}")
    rng = np.random.default_rng(seed)
    ms = np.clip(np.rint(rng.lognormal(log_mean, log_sigma, size=count)), 1, MAX_SYNTH_TOKENS)
    ns = np.clip(np.rint(rng.lognormal(log_mean, log_sigma, size=count)), 1, MAX_SYNTH_TOKENS)
    return [QueryRecord(int(m), int(n)) for m, n in zip(ms, ns)]


# ---------------------------------------------------------------------------
# File formats: query CSV (m,n per row) and histogram JSON.


def read_queries_csv(path: str | Path) -> list[QueryRecord]:
    rows: list[QueryRecord] = []
    columns: dict[str, int] | None = None
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if columns is None:
                header = [cell.strip() for cell in row]
                if "m" not in header or "n" not in header:
                    raise ValidationError(
                        f"{path}: line {lineno}: expected header with columns m,n"
                    )
                columns = {name: header.index(name) for name in header}
                continue
            try:
                rows.append(QueryRecord(int(row[columns["m"]]), int(row[columns["n"]])))
            except (IndexError, ValueError) as exc:
                raise ValidationError(f"{path}: line {lineno}: {exc}") from exc
    if not rows:
        raise ValidationError(f"{path}: empty workload")
    return rows


def write_queries_csv(
    path: str | Path, rows: Sequence[QueryRecord], *, header_comment: str | None = None
) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        if header_comment:
            fh.write(f"# {header_comment}\n")
        writer = csv.writer(fh)
        writer.writerow(["m", "n"])
        for row in rows:
            writer.writerow([row.m, row.n])


def distribution_to_dict(dist: WorkloadDistribution) -> dict:
    return {
        "input_hist": {str(k): v for k, v in dist.input_hist.items()},
        "output_hist": {str(k): v for k, v in dist.output_hist.items()},
    }


def write_histogram_json(
    path: str | Path, dist: WorkloadDistribution, *, extra: dict | None = None
) -> None:
    payload = distribution_to_dict(dist)
    if extra:
        payload.update(extra)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_histogram_json(path: str | Path) -> WorkloadDistribution:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"{path}: line {exc.lineno}: invalid JSON: {exc.msg}"
        ) from exc
    if not isinstance(data, dict):
        raise ValidationError(f"{path}: histogram file must hold a JSON object")

    def hist(key: str) -> dict[int, int]:
        raw = data.get(key)
        if not isinstance(raw, dict):
            raise ValidationError(f"{path}: missing or malformed {key!r}")
        try:
            return {int(tokens): int(count) for tokens, count in raw.items()}
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"{path}: bad {key} entry: {exc}") from exc

    return WorkloadDistribution(hist("input_hist"), hist("output_hist"))
