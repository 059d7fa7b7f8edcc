"""Exception taxonomy shared by all summgames modules.

The CLI maps these onto its exit-code contract: input errors exit 2,
capability errors exit 3. Contract errors signal that a game definition's
declared bounds are inconsistent with its actual behavior (or that an
internal invariant broke) and are treated as input errors by the CLI.
"""


class SummGamesError(Exception):
    """Base class for all library errors."""


class InputError(SummGamesError, ValueError):
    """Arguments or input documents violate a precondition."""


class CapabilityError(SummGamesError):
    """The request exceeds an explicit capability boundary (e.g. exact
    enumeration beyond the player cap, or a nonlinear summarization where
    only linear ones are supported)."""


class ContractError(SummGamesError, RuntimeError):
    """An invariant that should hold by construction failed, typically
    because a custom summarization's declared influence bound is wrong."""
