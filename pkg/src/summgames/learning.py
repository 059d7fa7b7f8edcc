"""Distributed smoothed best-response dynamics for linear games.

Each round, the expected summarization value mu_t (a single broadcast
number) is computed from the population's mixed strategies, and every
player nudges their action probability a step of size beta toward their
apparent best response to mu_t, evaluated on their own step-approximated
payoffs. Linearity of the summarization makes the mean evolve exactly as

    mu_{t+1} - mu_t = beta * (V(I_k) - mu_t),    k = interval of mu_t,

where V is the solver's per-interval best-response value table: the mean
chases the diagonal crossings of V. With beta < alpha the mean moves at
most one interval per step.

Two stopping regimes exist. With delta > 0 the run terminates once every
player's update is at most delta; because updates shrink geometrically
while the mean stays inside one interval, no interval visit can last more
than about (1/beta) * ln(1/delta) steps. With delta = 0 the dynamics never
self-terminate and an explicit step cap is required. Near-diagonal
oscillation can also keep delta > 0 runs alive indefinitely, so a default
cap on the scale of the worst-case convergence time applies when none is
given.

The dynamics themselves are deterministic; randomness enters only in the
Monte-Carlo regret certification of large games.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    EXACT_REGRET_MAX_PLAYERS,
    MixedProfile,
    SummGame,
    regret_mixed,
)
from .discretization import (
    AlphaGrid,
    StepPayoff,
    discretize_game,
    interval_of,
    make_grid,
)
from .errors import CapabilityError, ContractError, InputError
from .solver import (
    EquilibriumCertificate,
    Learned,
    VTable,
    apparent_br_at,
    build_v_table,
)

__all__ = [
    "LearnConfig",
    "TrajectoryStep",
    "Converged",
    "MaxStepsReached",
    "Trajectory",
    "Visit",
    "LearnDiagnostics",
    "broadcast_mean",
    "default_step_cap",
    "learn_step",
    "run_summ_learn",
]

# Tolerance for the exact-linearity recursion check, asserted every step.
_MU_RECURSION_TOL = 1e-12


@dataclass(frozen=True)
class LearnConfig:
    """Parameters of a learning run.

    beta defaults to alpha/2 when left as None (alpha is derived from
    epsilon and the game's derivative bound at run time). delta is the
    stopping threshold on per-player updates; delta = 0 disables
    self-termination and therefore requires max_steps. snapshot_every
    thins the recorded trajectory (never the dynamics); full probability
    snapshots are stored only when snapshot_probs is set.
    """

    epsilon: float
    delta: float
    beta: float | None = None
    max_steps: int | None = None
    snapshot_every: int = 1
    snapshot_probs: bool = False

    def __post_init__(self) -> None:
        if math.isnan(self.epsilon) or self.epsilon <= 0.0:
            raise InputError(f"epsilon must be > 0, got {self.epsilon}")
        if math.isnan(self.delta) or self.delta < 0.0:
            raise InputError(f"delta must be >= 0, got {self.delta}")
        if self.delta == 0.0 and (self.max_steps is None or self.max_steps <= 0):
            raise InputError("delta = 0 never self-terminates; max_steps > 0 is required")
        if self.max_steps is not None and self.max_steps <= 0:
            raise InputError("max_steps must be positive when given")
        if self.snapshot_every < 1:
            raise InputError("snapshot_every must be >= 1")


@dataclass(frozen=True)
class TrajectoryStep:
    """State at time t plus the size of the update taken from it."""

    t: int
    mu: float
    max_delta: float
    probs: tuple[float, ...] | None = None


@dataclass(frozen=True)
class Converged:
    """The delta-stopping rule fired after `step` updates."""

    step: int


@dataclass(frozen=True)
class MaxStepsReached:
    """The step cap ended the run."""

    step: int


@dataclass(frozen=True)
class Trajectory:
    steps: tuple[TrajectoryStep, ...]
    terminated: Converged | MaxStepsReached
    final: MixedProfile


@dataclass(frozen=True)
class Visit:
    """A maximal run of consecutive update steps whose mean stayed in one
    interval. Only steps from which an update was taken are counted; the
    resting state after termination is not."""

    interval: int
    start: int
    duration: int


@dataclass(frozen=True)
class LearnDiagnostics:
    """Scale diagnostics, reported but never cited as a guarantee.

    psi_scale is sqrt(sum of squared influences), the large-deviation
    scale of best-responding to the broadcast mean instead of the full
    distribution; psi_expression multiplies in the derivative bound and
    log factor with unit constant. The true constant is unknown, which is
    why certificates never include these numbers.
    """

    psi_scale: float
    psi_expression: float
    visit_log: tuple[Visit, ...]


def broadcast_mean(game: SummGame, profile: MixedProfile) -> float:
    """The expected summarization value of a product-form mixed profile.

    Exact only for linear summarizations, which is the supported case.
    """
    game._check_profile(profile.n)
    summ = game.summarization
    if not summ.is_linear:
        raise CapabilityError(
            "the broadcast mean requires a linear summarization (mean or "
            f"weighted vote); got {type(summ).__name__}"
        )
    return math.fsum(w * p for w, p in zip(summ.weights, profile.probs))


def learn_step(
    game: SummGame,
    steps: tuple[tuple[StepPayoff, StepPayoff], ...],
    profile: MixedProfile,
    beta: float,
) -> MixedProfile:
    """One synchronous update: every player moves beta of the way toward
    their apparent best response to the current broadcast mean.

    The best response is read off the step payoffs at the grid point of
    the interval containing the mean (ties to action 0), so a profile
    already at that pure best response is a fixed point.
    """
    grid = steps[0][0].grid
    if not 0.0 < beta < grid.alpha:
        raise InputError(f"beta must lie in (0, alpha={grid.alpha}), got {beta}")
    mu = broadcast_mean(game, profile)
    k = interval_of(grid, mu)
    target = apparent_br_at(game, steps, k)
    return MixedProfile(
        tuple(
            (1.0 - beta) * p + beta * a
            for p, a in zip(profile.probs, target.actions)
        )
    )


def default_step_cap(grid: AlphaGrid, beta: float, delta: float) -> int:
    """Step cap used when a delta > 0 run gives no explicit max_steps.

    Set to the worst-case convergence scale (1/alpha)(1/beta) ln(1/delta)
    plus one sweep of headroom. Near-diagonal oscillation can keep the delta rule from ever
    firing, so an unbounded run is never allowed.
    """
    if delta <= 0.0:
        raise InputError("the default step cap applies only to delta > 0 runs")
    burn = math.ceil(grid.K * (1.0 / beta) * max(0.0, math.log(1.0 / delta)))
    return max(1, burn + grid.K)


def run_summ_learn(
    game: SummGame,
    config: LearnConfig,
    initial: MixedProfile | None = None,
    mc_samples: int = 20000,
    mc_seed: int = 0,
) -> tuple[Trajectory, EquilibriumCertificate, LearnDiagnostics]:
    """Run the dynamics to termination and certify the final profile.

    The initial profile defaults to all probabilities 0.5. The final
    profile's regrets are computed exactly for n <= 20 and by seeded Monte
    Carlo above that; the certificate's claimed epsilon is the measured
    regret (plus a 3-standard-error margin in the Monte-Carlo case), not
    an analytic promise.

    The exact mean recursion is asserted at every step against the V table
    built on the same grid; a violation means the linearity contract broke
    and raises ContractError.
    """
    summ = game.summarization
    if not summ.is_linear:
        raise CapabilityError(
            "learning dynamics require a linear summarization (mean or "
            f"weighted vote); got {type(summ).__name__}"
        )
    grid = make_grid(config.epsilon, game.rho)
    alpha = grid.alpha
    beta = config.beta if config.beta is not None else alpha / 2.0
    if math.isnan(beta) or not 0.0 < beta < alpha:
        raise InputError(f"beta must lie in (0, alpha={alpha}), got {beta}")
    if config.max_steps is not None:
        max_steps = config.max_steps
    else:
        max_steps = default_step_cap(grid, beta, config.delta)

    steps_payoffs = discretize_game(game, grid)
    table: VTable = build_v_table(game, grid, steps_payoffs)

    if initial is None:
        profile = MixedProfile((0.5,) * game.n)
    else:
        game._check_profile(initial.n)
        profile = initial

    records: list[TrajectoryStep] = []
    visits: list[Visit] = []
    visit_interval: int | None = None
    visit_start = 0
    visit_len = 0

    probs = profile.probs
    mu = broadcast_mean(game, profile)
    t = 0
    terminated: Converged | MaxStepsReached | None = None
    while t < max_steps:
        k = interval_of(grid, mu)
        if k != visit_interval:
            if visit_interval is not None:
                visits.append(Visit(visit_interval, visit_start, visit_len))
            visit_interval = k
            visit_start = t
            visit_len = 0
        visit_len += 1

        target = table.br[k].actions
        new_probs = tuple(
            (1.0 - beta) * p + beta * a for p, a in zip(probs, target)
        )
        new_mu = math.fsum(
            w * p for w, p in zip(summ.weights, new_probs)
        )
        if abs((new_mu - mu) - beta * (table.v[k] - mu)) > _MU_RECURSION_TOL:
            raise ContractError(
                f"mean recursion violated at step {t}: the summarization is "
                "not behaving linearly"
            )
        max_delta = max(abs(np_ - p) for np_, p in zip(new_probs, probs))

        stopping = (
            config.delta > 0.0 and max_delta <= config.delta
        ) or t + 1 >= max_steps
        # The final update step is always recorded, even when thinned.
        if t % config.snapshot_every == 0 or stopping:
            records.append(
                TrajectoryStep(
                    t, mu, max_delta, probs if config.snapshot_probs else None
                )
            )
        probs = new_probs
        mu = new_mu
        t += 1
        if config.delta > 0.0 and max_delta <= config.delta:
            terminated = Converged(t)
            break
    if terminated is None:
        terminated = MaxStepsReached(t)
    if visit_interval is not None:
        visits.append(Visit(visit_interval, visit_start, visit_len))

    final = MixedProfile(probs)
    trajectory = Trajectory(tuple(records), terminated, final)

    if game.n <= EXACT_REGRET_MAX_PLAYERS:
        result = regret_mixed(game, final, mode="exact")
        claimed = result.max_regret
    else:
        result = regret_mixed(
            game, final, mode="monte_carlo", samples=mc_samples, seed=mc_seed
        )
        claimed = max(
            r + 3.0 * se for r, se in zip(result.regrets, result.stderrs)
        )
    certificate = EquilibriumCertificate(
        final, claimed, result.regrets, Learned(), stderrs=result.stderrs
    )

    weights = summ.weights
    psi_scale = math.sqrt(math.fsum(w * w for w in weights))
    if psi_scale > 0.0:
        psi_expression = game.rho * psi_scale * math.log(1.0 / psi_scale)
    else:
        psi_expression = 0.0
    diagnostics = LearnDiagnostics(psi_scale, psi_expression, tuple(visits))
    return trajectory, certificate, diagnostics
