"""Target-table / target-network synchronization policies.

Two kinds are shipped. The ``fixed`` kind syncs unconditionally every
``check_interval`` steps. The ``adaptive`` kind keeps a chronological queue
of the last ``2 * half_window`` per-step rewards, splits it into an old and
a new half, and syncs at a check point only when the recency-weighted
average of the new half is strictly below that of the old half, i.e. only
when the agent's recent behaviour has degraded. While the queue has not yet
filled, adaptive check points sync unconditionally (warm-up fallback), so
the two kinds behave identically until enough reward history exists.

Both half-averages use the same nondecreasing, unit-sum weight vector, so
the comparison is invariant under rescaling (r -> a*r, a > 0) and shifting
(r -> r + b) of the reward stream.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Positive, nondecreasing weights summing to 1 over one queue half."""

    w: np.ndarray

    @property
    def n(self) -> int:
        return len(self.w)


def make_weights(n: int) -> WeightVector:
    """Linear recency weights w_i = 2i / (n(n+1)) for i = 1..n.

    Weights grow with recency and sum to 1, so a constant reward sequence
    averages to that constant and the newest entry always carries the most
    weight.
    """
    if n < 1:
        raise ValueError(f"weight vector length must be >= 1, got {n}")
    return WeightVector(np.arange(1, n + 1, dtype=np.float64) * (2.0 / (n * (n + 1))))


class RewardQueue:
    """Chronological ring buffer of the last ``2 * half_window`` rewards."""

    def __init__(self, half_window: int):
        if half_window < 1:
            raise ValueError(f"half_window must be >= 1, got {half_window}")
        self.half_window = int(half_window)
        self._entries: deque[float] = deque(maxlen=2 * self.half_window)

    @property
    def capacity(self) -> int:
        return 2 * self.half_window

    @property
    def fill_count(self) -> int:
        return len(self._entries)

    @property
    def full(self) -> bool:
        return len(self._entries) == self.capacity

    def push(self, r: float) -> None:
        """Append the newest reward; the oldest is evicted once full."""
        if not math.isfinite(r):
            raise ValueError(f"reward pushed into the queue must be finite, got {r}")
        self._entries.append(float(r))

    def chronological(self) -> list[float]:
        """Queue contents, oldest first."""
        return list(self._entries)


def weighted_halves(queue: RewardQueue, weights: WeightVector) -> tuple[float, float]:
    """Recency-weighted averages of the old and new halves of a full queue.

    Within each half, weight index 1 (the smallest weight) attaches to the
    oldest entry of that half. Requires a full queue.
    """
    if not queue.full:
        raise ValueError(
            f"queue must be full to compare halves ({queue.fill_count}/{queue.capacity})"
        )
    n = queue.half_window
    if weights.n != n:
        raise ValueError(f"weight length {weights.n} does not match half_window {n}")
    entries = np.asarray(queue.chronological())
    avg_old = float(weights.w @ entries[:n])
    avg_new = float(weights.w @ entries[n:])
    return avg_old, avg_new


@dataclass(frozen=True, eq=False)
class SyncPolicy:
    """When to copy the online parameters into the target.

    ``check_interval`` is the number of environment steps between check
    points (both kinds only ever act at multiples of it). Adaptive policies
    additionally carry ``half_window`` (half the reward-queue length) and
    the weight vector used to average each half.
    """

    kind: str
    check_interval: int
    half_window: int | None = None
    weights: WeightVector | None = None

    def __post_init__(self):
        if self.kind not in ("fixed", "adaptive"):
            raise ValueError(f"sync kind must be 'fixed' or 'adaptive', got {self.kind!r}")
        if self.check_interval < 1:
            raise ValueError(f"check_interval must be >= 1, got {self.check_interval}")
        if self.kind == "adaptive":
            if self.half_window is None:
                object.__setattr__(self, "half_window", self.check_interval)
            if self.half_window < 1:
                raise ValueError(f"half_window must be >= 1, got {self.half_window}")
            if self.weights is None:
                object.__setattr__(self, "weights", make_weights(self.half_window))
            if self.weights.n != self.half_window:
                raise ValueError(
                    f"weight length {self.weights.n} does not match half_window {self.half_window}"
                )


def fixed_sync(check_interval: int) -> SyncPolicy:
    """Sync every ``check_interval`` steps."""
    return SyncPolicy(kind="fixed", check_interval=check_interval)


def adaptive_sync(check_interval: int, half_window: int | None = None) -> SyncPolicy:
    """Sync at check points only when recent rewards degraded.

    ``half_window`` defaults to ``check_interval``.
    """
    return SyncPolicy(kind="adaptive", check_interval=check_interval, half_window=half_window)


def should_sync(policy: SyncPolicy, step: int, queue: RewardQueue | None = None) -> bool:
    """Decide the sync at global step ``step`` (1-based).

    Off check points the answer is always False. At a check point a fixed
    policy always syncs; an adaptive policy syncs while its queue is not yet
    full, and otherwise exactly when the new-half weighted average is
    strictly below the old-half one.
    """
    if step < 1:
        raise ValueError(f"step must be >= 1, got {step}")
    if step % policy.check_interval != 0:
        return False
    if policy.kind == "fixed":
        return True
    if queue is None:
        raise ValueError("adaptive sync decisions need the reward queue")
    if not queue.full:
        return True
    avg_old, avg_new = weighted_halves(queue, policy.weights)
    return avg_new < avg_old
