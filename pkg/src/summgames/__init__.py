"""summgames: equilibrium computation for bounded-influence population games.

Games where every player's payoff depends only on their own binary action
and a global summarization of the whole population's play. The package
computes pure approximate Nash equilibria (``summ_nash``), simulates
distributed smoothed best-response dynamics on linear games
(``run_summ_learn``), and independently certifies the quality of any
output (``regret_pure``, ``regret_mixed``, ``brute_min_epsilon``,
``validate_certificate``).
"""

__version__ = "0.1.0"

from .core import (
    Affine,
    Constant,
    CustomSummarization,
    LinearWeighted,
    MajorityFraction,
    Mean,
    MixedProfile,
    MixedRegret,
    Payoff,
    PiecewiseLinear,
    PureProfile,
    Quadratic,
    SummGame,
    Summarization,
    eval_summarization,
    influence_of,
    payoff,
    regret_mixed,
    regret_pure,
)
from .discretization import (
    AlphaGrid,
    StepPayoff,
    discretize,
    discretize_game,
    interval_of,
    make_grid,
)
from .errors import CapabilityError, ContractError, InputError, SummGamesError
from .learning import (
    Converged,
    LearnConfig,
    LearnDiagnostics,
    MaxStepsReached,
    Trajectory,
    TrajectoryStep,
    Visit,
    broadcast_mean,
    learn_step,
    run_summ_learn,
)
from .oracle import (
    BruteForceReport,
    ValidationReport,
    brute_min_epsilon,
    validate_certificate,
)
from .solver import (
    EquilibriumCertificate,
    Horizontal,
    Learned,
    VTable,
    Vertical,
    apparent_br_at,
    build_v_table,
    find_horizontal,
    find_vertical_and_walk,
    summ_nash,
    summ_nash_with_table,
)

__all__ = [
    "__version__",
    "Affine",
    "AlphaGrid",
    "BruteForceReport",
    "CapabilityError",
    "Constant",
    "ContractError",
    "Converged",
    "CustomSummarization",
    "EquilibriumCertificate",
    "Horizontal",
    "InputError",
    "LearnConfig",
    "LearnDiagnostics",
    "Learned",
    "LinearWeighted",
    "MajorityFraction",
    "MaxStepsReached",
    "Mean",
    "MixedProfile",
    "MixedRegret",
    "Payoff",
    "PiecewiseLinear",
    "PureProfile",
    "Quadratic",
    "StepPayoff",
    "SummGame",
    "SummGamesError",
    "Summarization",
    "Trajectory",
    "TrajectoryStep",
    "VTable",
    "ValidationReport",
    "Vertical",
    "Visit",
    "apparent_br_at",
    "broadcast_mean",
    "brute_min_epsilon",
    "build_v_table",
    "discretize",
    "discretize_game",
    "eval_summarization",
    "find_horizontal",
    "find_vertical_and_walk",
    "influence_of",
    "interval_of",
    "learn_step",
    "make_grid",
    "payoff",
    "regret_mixed",
    "regret_pure",
    "run_summ_learn",
    "summ_nash",
    "summ_nash_with_table",
    "validate_certificate",
]
