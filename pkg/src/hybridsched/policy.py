"""Routing policies and query-to-system assignments."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from .errors import ValidationError
from .profiles import Axis
from .workload import QueryRecord


@dataclass(frozen=True)
class ThresholdPolicy:
    """Cutoff routing: token counts at or below the threshold go to the
    small (efficient) system, the rest to the large (fast) one."""

    axis: Axis
    threshold: int
    small_system: str
    large_system: str

    def __post_init__(self) -> None:
        if self.threshold < 0:
            raise ValidationError(f"threshold must be >= 0, got {self.threshold}")
        if self.small_system == self.large_system:
            raise ValidationError(
                f"small and large system must differ, both are {self.small_system!r}"
            )


@dataclass(frozen=True)
class Assignment:
    """A partition of a query list across systems.

    ``groups`` maps system id to the indices of the queries it serves.
    ``validate`` checks the partition property: every query index covered
    exactly once.
    """

    queries: tuple[QueryRecord, ...]
    groups: dict[str, tuple[int, ...]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "queries", tuple(self.queries))
        object.__setattr__(
            self,
            "groups",
            {sys_id: tuple(idxs) for sys_id, idxs in self.groups.items()},
        )

    @classmethod
    def from_choices(
        cls, queries: Sequence[QueryRecord], system_ids: Sequence[str]
    ) -> "Assignment":
        """Build from a per-query system choice (parallel sequences)."""
        if len(queries) != len(system_ids):
            raise ValidationError(
                f"{len(system_ids)} system choices for {len(queries)} queries"
            )
        groups: dict[str, list[int]] = {}
        for index, system_id in enumerate(system_ids):
            groups.setdefault(system_id, []).append(index)
        return cls(tuple(queries), {k: tuple(v) for k, v in sorted(groups.items())})

    @cached_property
    def _by_query(self) -> dict[int, str]:
        mapping: dict[int, str] = {}
        for system_id, indices in self.groups.items():
            for index in indices:
                mapping[index] = system_id
        return mapping

    def system_of(self, index: int) -> str:
        return self._by_query[index]

    def validate(self) -> None:
        """Raise unless the groups partition the query list exactly."""
        seen: dict[int, str] = {}
        for system_id, indices in self.groups.items():
            for index in indices:
                if index < 0 or index >= len(self.queries):
                    raise ValidationError(
                        f"partition violation: query index {index} out of range"
                    )
                if index in seen:
                    raise ValidationError(
                        f"partition violation: query {index} assigned to both "
                        f"{seen[index]!r} and {system_id!r}"
                    )
                seen[index] = system_id
        if len(seen) != len(self.queries):
            missing = sorted(set(range(len(self.queries))) - set(seen))
            raise ValidationError(
                f"partition violation: unassigned query indices {missing}"
            )
