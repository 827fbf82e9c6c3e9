"""Shared exception types."""


class InputError(ValueError):
    """Malformed or out-of-contract input (bad file, bad flag, bad argument)."""


class VerificationFailure(RuntimeError):
    """An exact identity that must hold was found violated.

    Raised only when a check that would falsify a theorem (or reveal an
    implementation bug) fails; never for ordinary negative results, which
    are report content.
    """


class BudgetExceeded(RuntimeError):
    """A search or closure exceeded its configured resource budget."""
