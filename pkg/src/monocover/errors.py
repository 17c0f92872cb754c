"""Exception types shared across the package."""

from __future__ import annotations


class MonocoverError(Exception):
    """Base class for all package errors."""


class BudgetExceeded(MonocoverError):
    """A bounded search or enumeration hit its configured budget."""

    def __init__(self, message: str, *, budget: int | None = None):
        super().__init__(message)
        self.budget = budget


class NotFound(MonocoverError):
    """A budgeted search failed.

    ``exhaustive`` is True only when the whole search space was examined,
    i.e. the failure is a proof of nonexistence.
    """

    def __init__(self, message: str, *, exhaustive: bool):
        super().__init__(message)
        self.exhaustive = exhaustive


class TargetUnreachable(MonocoverError):
    """The requested cover-number target exceeds what the input admits."""


class InfeasibleArity(MonocoverError):
    """The operation is only defined for a specific number of parts."""


class ArityTooSmall(MonocoverError):
    """Chain and extremal computations require tuple arity k >= part count r."""


class InputNotACover(MonocoverError):
    """A certificate or component family does not cover its target."""


class IncompatibleAssignment(MonocoverError):
    """An edge assignment violates edge-compatibility on some graph edge."""

    def __init__(self, message: str, *, edge: tuple[int, int] | None = None):
        super().__init__(message)
        self.edge = edge


class PreconditionViolated(MonocoverError):
    """A documented precondition failed; carries its name and a witness."""

    def __init__(self, name: str, witness=None):
        super().__init__(f"precondition violated: {name} (witness: {witness!r})")
        self.name = name
        self.witness = witness


class ContradictionError(MonocoverError):
    """A computation contradicts a structural guarantee; indicates a bug."""


class RefinementViolation(ContradictionError):
    """The component-refinement implication failed for a built colouring."""


class CounterexampleFound(ContradictionError):
    """A bounded refutation search found an instance that should not exist."""

    def __init__(self, message: str, *, certificate=None):
        super().__init__(message)
        self.certificate = certificate
