"""Deterministic derivation of independent random streams.

Every random decision in a run (environment dynamics, exploration,
minibatch sampling, evaluation rollouts) draws from its own generator,
derived from a master seed plus a short role tag and an optional index.
The derivation rule is fixed: the entropy fed to numpy's SeedSequence is
``(master_seed mod 2**64, crc32(role), index)``, so the same triple always
reproduces the same stream and distinct roles never collide.
"""
from __future__ import annotations

import zlib

import numpy as np

_MASK64 = (1 << 64) - 1


def seed_sequence(master_seed: int, role: str, index: int = 0) -> np.random.SeedSequence:
    """SeedSequence for the (master_seed, role, index) triple."""
    return np.random.SeedSequence(
        [int(master_seed) & _MASK64, zlib.crc32(role.encode("ascii")), int(index)]
    )


def split_rng(master_seed: int, role: str, index: int = 0) -> np.random.Generator:
    """PCG64 generator seeded from (master_seed, role, index)."""
    return np.random.Generator(np.random.PCG64(seed_sequence(master_seed, role, index)))


def derive_seed(master_seed: int, role: str, index: int = 0) -> int:
    """64-bit sub-seed for components that take an integer seed themselves."""
    return int(seed_sequence(master_seed, role, index).generate_state(1, np.uint64)[0])
