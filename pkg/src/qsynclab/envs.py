"""Small deterministic, seedable discrete environments.

Three families are shipped: ``gridworld``, ``chain`` and ``cliffwalk``.
Each is a finite MDP exposed two ways at once: an interactive reset/step
interface for agents, and an explicit (transition, reward, terminal) tensor
view for exact dynamic-programming oracles. The tensors drive step() itself,
so the two views can never disagree.

Conventions shared by all families:

- States are integer ids; observations carry the id plus a one-hot vector.
- Rewards are a function of (state, action) only. Under stochastic motion
  (``slip`` > 0) the reward is keyed to the intended move, not the realized
  one.
- Terminal states are absorbing: the tensor view gives them a self-loop
  with reward 0, so discounted values are well defined.
- An episode ends when a terminal state is entered or after
  ``max_episode_steps`` transitions. A timeout is not a terminal state;
  use :meth:`Environment.is_terminal_state` to tell the two apart when
  deciding whether to bootstrap past s_next.

Grid geometry: cells are indexed row-major (id = row * cols + col), the
start is the top-left cell and the goal the bottom-right one. Actions are
0=up, 1=right, 2=down, 3=left; moves off the edge stay in place. With slip
probability p the move goes as intended with probability 1 - p and to each
lateral (perpendicular) neighbour with probability p / 2.

Cliffwalk: start is the bottom-left cell, goal the bottom-right one, and
every other bottom-row cell is a cliff that ends the episode with a penalty.

Chain: states 0..length-1 with actions 0=back, 1=forward; the last state is
terminal and stepping into it pays ``goal_reward``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rng import split_rng

GRID_ACTIONS = ("up", "right", "down", "left")
CHAIN_ACTIONS = ("back", "forward")


@dataclass(frozen=True)
class EnvSpec:
    """Static facts about one environment instance."""

    name: str
    num_states: int
    num_actions: int
    gamma_hint: float
    max_episode_steps: int


@dataclass(frozen=True, eq=False)
class Observation:
    """Discrete state id plus its one-hot encoding."""

    state_id: int
    encoded: np.ndarray


@dataclass(eq=False)
class ExplicitMDP:
    """Exact dynamics tensors: transition [S,A,S], reward [S,A], terminal [S]."""

    transition: np.ndarray
    reward: np.ndarray
    terminal_mask: np.ndarray


class Environment:
    """Finite-MDP simulator driven by explicit dynamics tensors.

    Single-caller: do not interleave step/reset on one instance from several
    threads. Distinct instances share no mutable state.
    """

    def __init__(self, spec, transition, reward, terminal_mask, start_state, seed):
        self.spec = spec
        self._t = transition
        self._r = reward
        self._terminal = terminal_mask
        self._start = int(start_state)
        self.rng = split_rng(seed, "env")
        # Rows with a single successor skip the RNG entirely; stochastic rows
        # sample by inverse CDF.
        self._cdf = np.cumsum(transition, axis=2)
        det = np.full((spec.num_states, spec.num_actions), -1, dtype=np.int64)
        for s in range(spec.num_states):
            for a in range(spec.num_actions):
                nz = np.flatnonzero(transition[s, a])
                if len(nz) == 1:
                    det[s, a] = nz[0]
        self._det_next = det
        self._state: int | None = None
        self._episode_steps = 0
        self._done = True  # pre-reset

    @property
    def num_states(self) -> int:
        return self.spec.num_states

    @property
    def num_actions(self) -> int:
        return self.spec.num_actions

    def is_terminal_state(self, state_id: int) -> bool:
        """True when the state ends the episode by itself (not a timeout)."""
        return bool(self._terminal[state_id])

    def reseed(self, seed: int) -> None:
        """Restart the private random stream from a fresh seed."""
        self.rng = split_rng(seed, "env")

    def _observe(self, state_id: int) -> Observation:
        enc = np.zeros(self.spec.num_states)
        enc[state_id] = 1.0
        return Observation(int(state_id), enc)

    def reset(self) -> Observation:
        self._state = self._start
        self._episode_steps = 0
        self._done = False
        return self._observe(self._start)

    def _draw_next(self, s: int, a: int) -> int:
        nxt = self._det_next[s, a]
        if nxt >= 0:
            return int(nxt)
        u = self.rng.random()
        j = int(np.searchsorted(self._cdf[s, a], u, side="right"))
        return min(j, self.spec.num_states - 1)

    def step(self, action: int) -> tuple[Observation, float, bool]:
        """Advance one step; returns (observation, reward, done)."""
        if self._state is None or self._done:
            raise RuntimeError("step() on a finished or unreset environment; call reset() first")
        if not 0 <= action < self.spec.num_actions:
            raise ValueError(f"action must be in [0, {self.spec.num_actions}), got {action}")
        s = self._state
        nxt = self._draw_next(s, int(action))
        reward = float(self._r[s, action])
        self._episode_steps += 1
        done = bool(self._terminal[nxt]) or self._episode_steps >= self.spec.max_episode_steps
        self._state = nxt
        self._done = done
        return self._observe(nxt), reward, done

    def enumerate_mdp(self) -> ExplicitMDP:
        """Copies of the exact tensors that drive step()."""
        return ExplicitMDP(self._t.copy(), self._r.copy(), self._terminal.copy())


def _check(cond: bool, family: str, key: str, message: str) -> None:
    if not cond:
        raise ValueError(f"{family} param '{key}': {message}")


def _take(params: dict, key, default):
    return params.pop(key) if key in params else default


def _finite_real(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def _grid_move(row: int, col: int, action: int, rows: int, cols: int) -> tuple[int, int]:
    if action == 0:
        row = max(0, row - 1)
    elif action == 1:
        col = min(cols - 1, col + 1)
    elif action == 2:
        row = min(rows - 1, row + 1)
    else:
        col = max(0, col - 1)
    return row, col


def _grid_tensors(rows, cols, slip, step_cost, goal_reward, terminal_ids, special_rewards):
    """Shared grid dynamics builder.

    ``special_rewards`` maps an intended-destination id to the reward paid
    for moving into it (goal, cliff); any other intended move pays
    ``step_cost``.
    """
    n = rows * cols
    t = np.zeros((n, 4, n))
    r = np.zeros((n, 4))
    term = np.zeros(n, dtype=bool)
    term[list(terminal_ids)] = True
    for s in range(n):
        if term[s]:
            t[s, :, s] = 1.0
            continue
        row, col = divmod(s, cols)
        for a in range(4):
            ir, ic = _grid_move(row, col, a, rows, cols)
            intended = ir * cols + ic
            t[s, a, intended] += 1.0 - slip
            for lat in ((a + 1) % 4, (a + 3) % 4):
                lr, lc = _grid_move(row, col, lat, rows, cols)
                t[s, a, lr * cols + lc] += slip / 2.0
            r[s, a] = special_rewards.get(intended, step_cost)
    return t, r, term


def _validate_grid_common(family, params):
    rows = _take(params, "rows", 4)
    cols = _take(params, "cols", 4)
    slip = _take(params, "slip", 0.0)
    step_cost = _take(params, "step_cost", -0.01)
    goal_reward = _take(params, "goal_reward", 1.0)
    max_steps = _take(params, "max_episode_steps", None)
    _check(isinstance(rows, int) and rows >= 2, family, "rows", f"must be an integer >= 2, got {rows}")
    _check(isinstance(cols, int) and cols >= 2, family, "cols", f"must be an integer >= 2, got {cols}")
    _check(_finite_real(slip) and 0.0 <= slip < 1.0, family, "slip", f"must be in [0, 1), got {slip}")
    _check(_finite_real(step_cost), family, "step_cost", f"must equal a finite real, got {step_cost}")
    _check(_finite_real(goal_reward), family, "goal_reward", f"must equal a finite real, got {goal_reward}")
    if max_steps is None:
        max_steps = 4 * rows * cols
    _check(isinstance(max_steps, int) and max_steps >= 1, family, "max_episode_steps",
           f"must be an integer >= 1, got {max_steps}")
    return rows, cols, float(slip), float(step_cost), float(goal_reward), max_steps


def _build_gridworld(params: dict):
    rows, cols, slip, step_cost, goal_reward, max_steps = _validate_grid_common("gridworld", params)
    if params:
        raise ValueError(f"gridworld got unknown param(s): {sorted(params)}")
    goal = rows * cols - 1
    t, r, term = _grid_tensors(rows, cols, slip, step_cost, goal_reward, [goal], {goal: goal_reward})
    spec = EnvSpec("gridworld", rows * cols, 4, 0.99, max_steps)
    return spec, t, r, term, 0


def _build_cliffwalk(params: dict):
    cliff_penalty = _take(params, "cliff_penalty", -1.0)
    rows, cols, slip, step_cost, goal_reward, max_steps = _validate_grid_common("cliffwalk", params)
    _check(cols >= 3, "cliffwalk", "cols", f"must be an integer >= 3 so a cliff exists, got {cols}")
    _check(_finite_real(cliff_penalty), "cliffwalk", "cliff_penalty",
           f"must equal a finite real, got {cliff_penalty}")
    if params:
        raise ValueError(f"cliffwalk got unknown param(s): {sorted(params)}")
    bottom = (rows - 1) * cols
    goal = rows * cols - 1
    cliff = [bottom + c for c in range(1, cols - 1)]
    special = {goal: goal_reward}
    special.update({c: float(cliff_penalty) for c in cliff})
    t, r, term = _grid_tensors(rows, cols, slip, step_cost, goal_reward, [goal] + cliff, special)
    spec = EnvSpec("cliffwalk", rows * cols, 4, 0.99, max_steps)
    return spec, t, r, term, bottom


def _build_chain(params: dict):
    length = _take(params, "length", 5)
    goal_reward = _take(params, "goal_reward", 1.0)
    step_cost = _take(params, "step_cost", 0.0)
    max_steps = _take(params, "max_episode_steps", None)
    _check(isinstance(length, int) and length >= 2, "chain", "length",
           f"must be an integer >= 2, got {length}")
    _check(_finite_real(goal_reward), "chain", "goal_reward",
           f"must equal a finite real, got {goal_reward}")
    _check(_finite_real(step_cost), "chain", "step_cost",
           f"must equal a finite real, got {step_cost}")
    if max_steps is None:
        max_steps = 4 * length
    _check(isinstance(max_steps, int) and max_steps >= 1, "chain", "max_episode_steps",
           f"must be an integer >= 1, got {max_steps}")
    if params:
        raise ValueError(f"chain got unknown param(s): {sorted(params)}")
    t = np.zeros((length, 2, length))
    r = np.zeros((length, 2))
    term = np.zeros(length, dtype=bool)
    term[length - 1] = True
    for s in range(length - 1):
        t[s, 0, max(0, s - 1)] = 1.0
        t[s, 1, s + 1] = 1.0
        r[s, 0] = step_cost
        r[s, 1] = goal_reward if s == length - 2 else step_cost
    t[length - 1, :, length - 1] = 1.0
    spec = EnvSpec("chain", length, 2, 0.9, max_steps)
    return spec, t, r, term, 0


_FAMILIES = {
    "gridworld": _build_gridworld,
    "chain": _build_chain,
    "cliffwalk": _build_cliffwalk,
}


def make_env(spec_name: str, params: dict | None = None, seed: int = 0) -> Environment:
    """Build a seeded environment from a family name and its parameters.

    The same (spec_name, params, seed) always yields an environment whose
    whole future under identical action sequences is identical.
    """
    if spec_name not in _FAMILIES:
        raise ValueError(
            f"unknown environment family {spec_name!r}; expected one of {sorted(_FAMILIES)}"
        )
    spec, t, r, term, start = _FAMILIES[spec_name](dict(params or {}))
    return Environment(spec, t, r, term, start, seed)
