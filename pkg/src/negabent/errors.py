"""Exception types raised across the package."""

from __future__ import annotations


class DimensionError(ValueError):
    """Operand shapes do not agree."""


class SingularMatrixError(ValueError):
    """A matrix that must be invertible over GF(2) is not."""


class UnsupportedCaseError(ValueError):
    """The operation is not defined for this number of variables."""


class NotBentError(ValueError):
    pass


class NotNegabentError(ValueError):
    pass


class InvalidRecipeError(ValueError):
    """A construction recipe violates one of its invariants.

    The message names the failed invariant.
    """


class ConstantsMismatchError(AssertionError):
    """Closed-form constants failed a computational identity check."""


class InternalInvariantError(AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class CampaignError(ValueError):
    """Unknown claim id or an infeasible campaign request."""
