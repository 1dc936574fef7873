"""Run records shared by the tabular and neural training loops."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class SyncEvent:
    """Outcome of one target-sync check point.

    The half averages are populated only for adaptive decisions taken on a
    full reward queue; warm-up and fixed-policy events carry None.
    """

    step: int
    synced: bool
    avg_old: float | None = None
    avg_new: float | None = None


@dataclass
class TrainingLog:
    episode_returns: list[float] = field(default_factory=list)
    episode_lengths: list[int] = field(default_factory=list)
    losses: list[tuple[int, float]] = field(default_factory=list)
    sync_events: list[SyncEvent] = field(default_factory=list)
    epsilon_trace: list[float] = field(default_factory=list)

    def synced_steps(self) -> list[int]:
        return [e.step for e in self.sync_events if e.synced]

    def skipped_steps(self) -> list[int]:
        return [e.step for e in self.sync_events if not e.synced]
