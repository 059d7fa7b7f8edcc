"""Independent ground truth: exhaustive search and certificate validation.

Nothing here shares logic with the solver or the learner; this module is
what the test suite (and the CLI ``verify`` command) trusts when deciding
whether an emitted certificate is honest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    EXACT_REGRET_MAX_PLAYERS,
    PureProfile,
    SummGame,
    _profile_bits,
    regret_mixed,
    regret_pure,
)
from .errors import CapabilityError, InputError
from .solver import EquilibriumCertificate

__all__ = [
    "BRUTE_FORCE_MAX_PLAYERS",
    "BruteForceReport",
    "ValidationReport",
    "brute_min_epsilon",
    "validate_certificate",
]

# 2^22 profiles keeps full enumeration at desk scale (seconds, not hours).
BRUTE_FORCE_MAX_PLAYERS = 22

_CHUNK_ROWS = 1 << 14

# Agreement tolerance for exactly recomputed regrets.
_EXACT_TOL = 1e-9


@dataclass(frozen=True)
class BruteForceReport:
    """The best pure profile found by exhaustive max-regret minimization."""

    best_profile: PureProfile
    epsilon_star: float
    profiles_examined: int


def brute_min_epsilon(game: SummGame) -> BruteForceReport:
    """Minimize max-regret over all 2^n pure profiles.

    Ties break to the lexicographically smallest action tuple. Enumeration
    runs in fixed-size blocks with a deterministic min-reduction, so the
    result never depends on evaluation order.
    """
    n = game.n
    if n > BRUTE_FORCE_MAX_PLAYERS:
        raise CapabilityError(
            f"exhaustive search is capped at n <= {BRUTE_FORCE_MAX_PLAYERS} "
            f"(got n={n})"
        )
    summ = game.summarization
    total = 1 << n
    best_value = math.inf
    best_code = 0
    for start in range(0, total, _CHUNK_ROWS):
        codes = np.arange(start, min(start + _CHUNK_ROWS, total), dtype=np.int64)
        bits = _profile_bits(codes, n)
        state = summ.batch_state(bits)
        worst = np.zeros(len(codes))
        for i in range(n):
            lo, hi = summ.batch_deviation(state, bits, i)
            f0 = game.payoffs[i][0].evaluate_array(lo)
            f1 = game.payoffs[i][1].evaluate_array(hi)
            current = np.where(bits[:, i] == 1.0, f1, f0)
            np.maximum(worst, np.maximum(f0, f1) - current, out=worst)
        idx = int(np.argmin(worst))  # first minimum = lexicographic winner
        if worst[idx] < best_value:
            best_value = float(worst[idx])
            best_code = int(codes[idx])
    actions = tuple(int((best_code >> (n - 1 - i)) & 1) for i in range(n))
    return BruteForceReport(PureProfile(actions), best_value, total)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of re-deriving a certificate's regrets from scratch."""

    valid: bool
    violations: tuple[str, ...]
    recomputed_regrets: tuple[float, ...]
    recomputed_stderrs: tuple[float, ...] | None
    mode: str


def validate_certificate(
    game: SummGame,
    certificate: EquilibriumCertificate,
    mode: str = "auto",
    samples: int = 20000,
    seed: int = 0,
) -> ValidationReport:
    """Recompute a certificate's regrets and check its claims.

    Pure profiles are recomputed with the pure regret oracle, mixed ones
    exactly (n <= 20) or by seeded Monte Carlo. Recomputed values must
    match the certificate within 1e-9 (exact paths) or 4 standard errors
    (Monte Carlo), and the maximum must not exceed the claimed epsilon.
    Violations are report content, not exceptions.
    """
    profile = certificate.profile
    arity = profile.n
    if arity != game.n:
        raise InputError(
            f"certificate profile has {arity} players, game has {game.n}"
        )
    if len(certificate.regrets) != game.n:
        raise InputError(
            f"certificate has {len(certificate.regrets)} regrets for n={game.n}"
        )

    violations: list[str] = []
    stderrs: tuple[float, ...] | None = None
    if isinstance(profile, PureProfile):
        recomputed = regret_pure(game, profile)
        used_mode = "pure"
    else:
        if mode == "auto":
            mode = "exact" if game.n <= EXACT_REGRET_MAX_PLAYERS else "monte_carlo"
        result = regret_mixed(game, profile, mode=mode, samples=samples, seed=seed)
        recomputed = result.regrets
        stderrs = result.stderrs
        used_mode = result.mode

    for i, (fresh, claimed) in enumerate(zip(recomputed, certificate.regrets)):
        allowance = _EXACT_TOL if stderrs is None else 4.0 * stderrs[i]
        if abs(fresh - claimed) > allowance:
            violations.append(
                f"player {i}: certificate regret {claimed} differs from "
                f"recomputed {fresh} by more than {allowance}"
            )
    worst = max(range(game.n), key=lambda i: recomputed[i])
    allowance = _EXACT_TOL if stderrs is None else 4.0 * stderrs[worst]
    if recomputed[worst] > certificate.epsilon_claimed + allowance:
        violations.append(
            f"max recomputed regret {recomputed[worst]} (player {worst}) "
            f"exceeds the claimed epsilon {certificate.epsilon_claimed}"
        )
    return ValidationReport(
        valid=not violations,
        violations=tuple(violations),
        recomputed_regrets=tuple(recomputed),
        recomputed_stderrs=stderrs,
        mode=used_mode,
    )
