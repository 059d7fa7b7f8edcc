"""Pure approximate-equilibrium solver.

The algorithm discretizes every payoff function onto an alpha grid, so
each player's preferred action is constant while the summarization value
stays inside one interval. That yields, per interval I_k, an apparent
best-response profile BR(I_k) (each player best-responds to the interval,
ignoring their own influence) and its summarization value V(I_k). Wherever
V crosses the diagonal, an approximate equilibrium sits:

* horizontal crossing: V(I_k) lands inside I_k itself, so BR(I_k) is
  self-consistent and is the answer;
* vertical crossing: V drops past the boundary k*alpha between two
  adjacent intervals. Walking bit by bit from BR(I_{k-1}) to BR(I_k)
  moves the summarization value by at most tau per flip, so some
  intermediate profile lands strictly within tau of the boundary and is
  the answer.

Either way the output's max regret is bounded by 3*tau*rho + epsilon; the
emitted certificate states that bound and carries regrets recomputed by
the independent regret oracle, never the solver's own bookkeeping.

Tie-breaking is to action 0 everywhere, crossings are scanned smallest-k
first (horizontal before vertical), and the walk flips differing bits in
ascending player order, so identical inputs produce identical outputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .core import MixedProfile, PureProfile, SummGame, regret_pure
from .discretization import (
    DEFAULT_MAX_INTERVALS,
    AlphaGrid,
    StepPayoff,
    discretize_game,
    interval_of,
    make_grid,
)
from .errors import ContractError

__all__ = [
    "VTable",
    "Horizontal",
    "Vertical",
    "Learned",
    "EquilibriumCertificate",
    "apparent_br_at",
    "build_v_table",
    "find_horizontal",
    "find_vertical_and_walk",
    "summ_nash",
    "summ_nash_with_table",
]


@dataclass(frozen=True)
class VTable:
    """Per-interval apparent best responses and their summarization values.

    br[k] is the profile of per-player favorite actions when the
    summarization value sits in interval k; v[k] = S(br[k]).
    """

    grid: AlphaGrid
    br: tuple[PureProfile, ...]
    v: tuple[float, ...]

    def rows(self) -> list[tuple[float, float]]:
        """(k*alpha, v[k]) pairs, the plottable form of the table."""
        return [(self.grid.left_edge(k), self.v[k]) for k in range(self.grid.K)]


@dataclass(frozen=True)
class Horizontal:
    """V(I_k) fell inside I_k itself."""

    k: int


@dataclass(frozen=True)
class Vertical:
    """V dropped past the boundary k*alpha; the walk stopped at this position."""

    k: int
    walk_position: int


@dataclass(frozen=True)
class Learned:
    """The profile came from the learning dynamics, not a crossing scan."""


Crossing = Union[Horizontal, Vertical, Learned]


@dataclass(frozen=True)
class EquilibriumCertificate:
    """A strategy profile together with its claimed equilibrium quality.

    ``regrets`` comes from the independent regret computation on the
    profile. Emitters verify max(regrets) <= epsilon_claimed before
    handing a certificate out; the type itself stays permissive so that
    untrusted (possibly tampered) certificates can be represented and fed
    to the validation oracle. ``stderrs`` is present when the regrets were
    estimated by Monte Carlo.
    """

    profile: Union[PureProfile, MixedProfile]
    epsilon_claimed: float
    regrets: tuple[float, ...]
    crossing: Crossing
    stderrs: tuple[float, ...] | None = None

    @property
    def max_regret(self) -> float:
        return max(self.regrets)


def apparent_br_at(
    game: SummGame, steps: tuple[tuple[StepPayoff, StepPayoff], ...], k: int
) -> PureProfile:
    """Each player's favorite action when the summarization value is in I_k.

    Compares the two step payoffs at the interval's left endpoint; ties go
    to action 0.
    """
    return PureProfile(
        tuple(1 if s1.at_index(k) > s0.at_index(k) else 0 for s0, s1 in steps)
    )


def build_v_table(
    game: SummGame,
    grid: AlphaGrid,
    steps: tuple[tuple[StepPayoff, StepPayoff], ...] | None = None,
) -> VTable:
    """Tabulate BR(I_k) and V(I_k) = S(BR(I_k)) for every interval."""
    if steps is None:
        steps = discretize_game(game, grid)
    a0 = np.array([s0.values for s0, _ in steps])
    a1 = np.array([s1.values for _, s1 in steps])
    bits = (a1 > a0).T.astype(np.float64)  # (K, n), ties to action 0
    values = game.summarization.batch_value(game.summarization.batch_state(bits))
    br = tuple(
        PureProfile(tuple(int(b) for b in bits[k])) for k in range(grid.K)
    )
    return VTable(grid, br, tuple(float(v) for v in values))


def find_horizontal(table: VTable) -> int | None:
    """The smallest k whose V value lands back inside I_k, if any."""
    for k in range(table.grid.K):
        if interval_of(table.grid, table.v[k]) == k:
            return k
    return None


def _walk(
    game: SummGame, start: PureProfile, goal: PureProfile, boundary: float
) -> tuple[int, PureProfile]:
    """Flip start's bits toward goal (ascending player order) and return the
    first profile whose summarization value is strictly within tau of the
    boundary. Position 0 is the unflipped start."""
    tau = game.tau
    summ = game.summarization
    actions = list(start.actions)
    position = 0
    if abs(summ.evaluate(tuple(actions)) - boundary) < tau:
        return position, start
    for i in range(game.n):
        if start.actions[i] == goal.actions[i]:
            continue
        actions[i] = goal.actions[i]
        position += 1
        if abs(summ.evaluate(tuple(actions)) - boundary) < tau:
            return position, PureProfile(tuple(actions))
    raise ContractError(
        "no profile on the best-response walk reached the crossing boundary; "
        "the game's declared influence bound is smaller than its actual "
        "influence"
    )


def find_vertical_and_walk(
    game: SummGame, table: VTable
) -> tuple[int, int, PureProfile]:
    """Locate a vertical crossing and resolve it to a single profile.

    Scans for the smallest k where V drops past the boundary k*alpha
    (strict on both sides first; if the strict scan is empty, which can
    only happen when some V value hits a boundary exactly, the left side
    is relaxed to >=, restoring the totality guarantee). Returns
    (k, walk position, profile).
    """
    grid = table.grid
    v = table.v
    crossing_k: int | None = None
    for k in range(1, grid.K):
        edge = grid.left_edge(k)
        if v[k - 1] > edge > v[k]:
            crossing_k = k
            break
    if crossing_k is None:
        for k in range(1, grid.K):
            edge = grid.left_edge(k)
            if v[k - 1] >= edge > v[k]:
                crossing_k = k
                break
    if crossing_k is None:
        raise ContractError(
            "no horizontal or vertical crossing exists; the game definition "
            "violates the bounds that guarantee one"
        )
    start = table.br[crossing_k - 1]
    goal = table.br[crossing_k]
    if start == goal:
        raise ContractError(
            "vertical crossing with identical best-response profiles on both "
            "sides; V cannot drop across the boundary in that case"
        )
    position, profile = _walk(game, start, goal, grid.left_edge(crossing_k))
    return crossing_k, position, profile


def summ_nash_with_table(
    game: SummGame,
    epsilon: float,
    max_intervals: int = DEFAULT_MAX_INTERVALS,
) -> tuple[EquilibriumCertificate, VTable]:
    """As ``summ_nash`` but also returns the V table, for export/plotting."""
    grid = make_grid(epsilon, game.rho, max_intervals=max_intervals)
    steps = discretize_game(game, grid)
    table = build_v_table(game, grid, steps)
    k = find_horizontal(table)
    crossing: Crossing
    if k is not None:
        profile = table.br[k]
        crossing = Horizontal(k)
    else:
        k, position, profile = find_vertical_and_walk(game, table)
        crossing = Vertical(k, position)
    regrets = regret_pure(game, profile)
    claimed = 3.0 * game.tau * game.rho + epsilon
    if max(regrets) > claimed:
        raise ContractError(
            f"solver output has regret {max(regrets)}, above the guaranteed "
            f"{claimed}; the game's declared influence/derivative bounds are "
            "wrong"
        )
    certificate = EquilibriumCertificate(profile, claimed, regrets, crossing)
    return certificate, table


def summ_nash(
    game: SummGame,
    epsilon: float,
    max_intervals: int = DEFAULT_MAX_INTERVALS,
) -> EquilibriumCertificate:
    """Compute a pure profile whose max regret is at most 3*tau*rho + epsilon.

    The certificate's regrets are recomputed independently rather than
    taken from the crossing analysis. The horizontal case actually
    satisfies the tighter tau*rho + epsilon/2; the certificate reports the
    uniform worst-case bound and callers can recover the tighter one from
    the crossing field.
    """
    certificate, _ = summ_nash_with_table(game, epsilon, max_intervals)
    return certificate
