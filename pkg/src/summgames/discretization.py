"""Uniform step-function approximation of payoff functions.

[0, 1] is tiled by K intervals of width alpha = 1/K: I_k = [k*alpha,
(k+1)*alpha) for k < K-1, with the last interval closed at 1. A payoff
function F is approximated by the step function that takes the value
F(k*alpha) on all of I_k, which is off by at most rho_f * alpha anywhere.

Interval membership uses exact floating-point comparisons against the
boundaries k*alpha as computed in double precision; there is no epsilon
fudging, so the boundary semantics are deterministic and testable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Payoff, SummGame
from .errors import CapabilityError, InputError

__all__ = [
    "AlphaGrid",
    "StepPayoff",
    "make_grid",
    "discretize",
    "discretize_game",
    "interval_of",
    "DEFAULT_MAX_INTERVALS",
]

DEFAULT_MAX_INTERVALS = 10**6


@dataclass(frozen=True)
class AlphaGrid:
    """The uniform partition of [0, 1] into K intervals of width 1/K."""

    K: int

    def __post_init__(self) -> None:
        if self.K < 1:
            raise InputError("interval count must be >= 1")

    @property
    def alpha(self) -> float:
        return 1.0 / self.K

    def left_edge(self, k: int) -> float:
        return k * self.alpha

    def grid_points(self) -> np.ndarray:
        """The K left endpoints k*alpha, where step values are sampled."""
        return np.arange(self.K) * self.alpha


def make_grid(
    epsilon: float, rho: float, max_intervals: int = DEFAULT_MAX_INTERVALS
) -> AlphaGrid:
    """Choose the resolution that backs an epsilon-quality guarantee.

    The target width is epsilon / (8 * rho), snapped down to 1/K with K an
    integer so the intervals tile [0, 1] exactly; shrinking alpha only
    tightens the approximation, so the guarantee is preserved. For rho = 0
    every payoff is constant and one interval suffices.
    """
    if math.isnan(epsilon) or epsilon <= 0.0:
        raise InputError(f"epsilon must be > 0, got {epsilon}")
    if math.isnan(rho) or rho < 0.0:
        raise InputError(f"rho must be >= 0, got {rho}")
    if rho == 0.0:
        return AlphaGrid(1)
    needed = max(1, math.ceil((8.0 * rho) / epsilon))
    if needed > max_intervals:
        raise CapabilityError(
            f"epsilon={epsilon} with rho={rho} needs {needed} intervals, "
            f"over the cap of {max_intervals}"
        )
    return AlphaGrid(needed)


def interval_of(grid: AlphaGrid, z: float) -> int:
    """The index k of the interval containing z; z = 1 maps to K - 1.

    Resolves the unique k with k*alpha <= z < (k+1)*alpha under exact
    float comparisons (last interval closed).
    """
    if math.isnan(z) or not 0.0 <= z <= 1.0:
        raise InputError(f"value must lie in [0, 1], got {z}")
    K = grid.K
    alpha = grid.alpha
    k = min(int(z * K), K - 1)
    # int(z*K) can land one interval off the float boundaries; walk to the
    # cell whose edges actually bracket z.
    while k > 0 and k * alpha > z:
        k -= 1
    while k < K - 1 and (k + 1) * alpha <= z:
        k += 1
    return k


@dataclass(frozen=True)
class StepPayoff:
    """A payoff function frozen to one value per grid interval."""

    grid: AlphaGrid
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.grid.K:
            raise InputError(
                f"{len(self.values)} step values for K={self.grid.K} intervals"
            )
        if any(not 0.0 <= v <= 1.0 for v in self.values):
            raise InputError("step values must lie in [0, 1]")

    def at_index(self, k: int) -> float:
        return self.values[k]

    def evaluate(self, z: float) -> float:
        return self.values[interval_of(self.grid, z)]


def discretize(fn: Payoff, grid: AlphaGrid) -> StepPayoff:
    """Sample fn at the K left endpoints; exactly K evaluations."""
    values = fn.evaluate_array(grid.grid_points())
    return StepPayoff(grid, tuple(float(v) for v in values))


def discretize_game(
    game: SummGame, grid: AlphaGrid
) -> tuple[tuple[StepPayoff, StepPayoff], ...]:
    """Step approximations of all 2n payoff functions, one pair per player."""
    return tuple(
        (discretize(pair[0], grid), discretize(pair[1], grid))
        for pair in game.payoffs
    )
