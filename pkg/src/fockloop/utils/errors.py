"""Exceptions raised by the simulation modules.

They subclass builtins so that `cli_error_handler` can map whole families to exit codes.
"""


class FockDomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DegenerateStateError(ValueError):
    """A state has no weight left to normalize."""


class UndefinedFidelityError(ValueError):
    """Fidelity was requested for a step that can never succeed."""


class PreconditionError(ValueError):
    """A state does not satisfy the support required by an operation."""


class DeadBranchError(RuntimeError):
    """Post-selection on the no-click event is impossible."""


class GridAccuracyError(RuntimeError):
    """A phase-space grid is too coarse or too small to integrate reliably."""


class VerificationError(RuntimeError):
    """Closed forms and the oracle disagree beyond tolerance."""
