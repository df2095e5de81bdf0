"""Seeded point-set generation.

All randomness goes through :func:`make_rng`, a numpy ``Generator`` over the
Philox4x64 counter-based bit generator, so a seed yields the same stream on
every platform.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidPointSet
from .geometry import PointSet, validate_general_position


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed) & (2**64 - 1)))


def trial_seed(seed: int, trial: int) -> int:
    """Derive an independent 64-bit seed for one trial of a campaign."""
    return int(np.random.SeedSequence([int(seed) & (2**64 - 1), trial]).generate_state(1, np.uint64)[0])


def random_pointset(n: int, rng: np.random.Generator, max_retries: int = 100) -> PointSet:
    """Uniform points in the unit square, resampling aligned points."""
    if n < 1:
        raise ValueError("n must be at least 1")
    xy = rng.random((n, 2))
    for _ in range(max_retries):
        report = validate_general_position(xy)
        if report.ok:
            return PointSet(xy)
        bad = sorted({j for _, j, _ in report.violations})
        xy[bad] = rng.random((len(bad), 2))
    raise InvalidPointSet(f"general position not reached after {max_retries} resampling rounds")
