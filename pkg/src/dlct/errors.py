"""Exception types raised across the package."""


class DlctError(Exception):
    """Base class for all package-specific errors."""


class ParameterError(DlctError, ValueError):
    """A construction or field parameter violates its stated constraints."""


class NotBijectiveError(DlctError, ValueError):
    """An operation requiring a permutation received a non-bijective table."""


class TableFormatError(DlctError, ValueError):
    """An S-box file is malformed (bad header, count, or value range)."""


class BudgetExceededError(DlctError, RuntimeError):
    """A requested computation exceeds the guardrail and was not forced."""
