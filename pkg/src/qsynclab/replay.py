"""Fixed-capacity FIFO experience store with uniform minibatch sampling."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Transition:
    """One experience tuple: acted in state s, got r, landed in s_next.

    ``terminal`` marks a true end-of-episode state (not a timeout), which is
    what decides whether bootstrapping is cut off at s_next.
    """

    s: int
    a: int
    r: float
    s_next: int
    terminal: bool

    def __post_init__(self):
        if not math.isfinite(self.r):
            raise ValueError(f"transition reward must be finite, got {self.r}")


@dataclass(eq=False)
class Batch:
    """Column-oriented minibatch of transitions."""

    s: np.ndarray
    a: np.ndarray
    r: np.ndarray
    s_next: np.ndarray
    terminal: np.ndarray

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("batch must contain at least one transition")

    @property
    def size(self) -> int:
        return len(self.s)

    @classmethod
    def from_transitions(cls, transitions) -> "Batch":
        ts = list(transitions)
        return cls(
            s=np.array([t.s for t in ts], dtype=np.int64),
            a=np.array([t.a for t in ts], dtype=np.int64),
            r=np.array([t.r for t in ts], dtype=np.float64),
            s_next=np.array([t.s_next for t in ts], dtype=np.int64),
            terminal=np.array([t.terminal for t in ts], dtype=bool),
        )

    @property
    def transitions(self) -> list[Transition]:
        return [
            Transition(int(s), int(a), float(r), int(sn), bool(tm))
            for s, a, r, sn, tm in zip(self.s, self.a, self.r, self.s_next, self.terminal)
        ]


class ReplayBuffer:
    """Ring of the most recent ``capacity`` transitions.

    State ids are stored raw (no encoding); encoding happens at batch use.
    Single-writer single-reader; no internal locking.
    """

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError(f"capacity must be >= 1, got {capacity}")
        self.capacity = int(capacity)
        self._s = np.zeros(capacity, dtype=np.int64)
        self._a = np.zeros(capacity, dtype=np.int64)
        self._r = np.zeros(capacity, dtype=np.float64)
        self._s_next = np.zeros(capacity, dtype=np.int64)
        self._terminal = np.zeros(capacity, dtype=bool)
        self._count = 0
        self._cursor = 0

    def __len__(self) -> int:
        return self._count

    def push(self, t: Transition) -> None:
        """Insert, evicting the oldest entry once at capacity."""
        i = self._cursor
        self._s[i] = t.s
        self._a[i] = t.a
        self._r[i] = t.r
        self._s_next[i] = t.s_next
        self._terminal[i] = t.terminal
        self._cursor = (i + 1) % self.capacity
        if self._count < self.capacity:
            self._count += 1

    def sample(self, batch_size: int, rng: np.random.Generator) -> Batch:
        """Uniform i.i.d. draws (with replacement) over the stored items."""
        if self._count == 0:
            raise ValueError("cannot sample from an empty replay buffer")
        if batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {batch_size}")
        idx = rng.integers(0, self._count, size=batch_size)
        return Batch(
            s=self._s[idx].copy(),
            a=self._a[idx].copy(),
            r=self._r[idx].copy(),
            s_next=self._s_next[idx].copy(),
            terminal=self._terminal[idx].copy(),
        )

    def contents(self) -> list[Transition]:
        """Stored transitions in insertion order, oldest first."""
        if self._count < self.capacity:
            order = range(self._count)
        else:
            order = [(self._cursor + k) % self.capacity for k in range(self.capacity)]
        return [
            Transition(
                int(self._s[i]),
                int(self._a[i]),
                float(self._r[i]),
                int(self._s_next[i]),
                bool(self._terminal[i]),
            )
            for i in order
        ]
