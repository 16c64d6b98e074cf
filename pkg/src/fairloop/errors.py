"""Exception types shared across the package."""


class FairloopError(Exception):
    """Base class for all package-specific errors."""


class DegenerateGroupError(FairloopError):
    """A group has zero total relevance, so a relevance-normalized metric
    or constraint is undefined. Carries the offending 1-based group index."""

    def __init__(self, group: int, message: str | None = None):
        self.group = group
        super().__init__(message or f"group {group} has zero total relevance")


class InfeasibleError(FairloopError):
    """The requested constraint set admits no feasible solution."""


class DecompositionError(FairloopError):
    """A doubly stochastic matrix could not be decomposed (no perfect
    matching on its support). Carries the residual matrix for inspection."""

    def __init__(self, residual, message: str = "no perfect matching on support"):
        self.residual = residual
        super().__init__(message)


class HorizonExhaustedError(FairloopError):
    """A sequential controller was stepped past its deployment horizon."""


class ConfigError(FairloopError):
    """An experiment configuration is malformed (unknown key, bad value)."""


class SchemaError(FairloopError):
    """A CSV input does not match the documented column schema."""


class EmptyGroupWarning(UserWarning):
    """A group partition contains a group with no items."""
