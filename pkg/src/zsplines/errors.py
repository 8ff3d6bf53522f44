"""Exception hierarchy.

Every error carries a stable ``code`` string (the class name) so the CLI
can report failures in a machine-readable way.
"""

from __future__ import annotations


class SplineError(Exception):
    """Base class for every error raised by this package."""

    @property
    def code(self) -> str:
        return type(self).__name__


# graph input and validation
class MalformedDocument(SplineError):
    pass


class UnknownVertex(SplineError):
    pass


class NegativeLabel(SplineError):
    pass


class InvalidModulus(SplineError):
    pass


class Disconnected(SplineError):
    def __init__(self, components):
        self.components = components
        super().__init__(f"graph is disconnected: components {components}")


class SelfLoop(SplineError):
    pass


class LabelOutOfRange(SplineError):
    pass


class NonDivisorReduction(SplineError):
    pass


class NonDivisorLift(SplineError):
    pass


class ContextMismatch(SplineError):
    pass


# number theory
class NotPrime(SplineError):
    pass


class NotPrimePower(SplineError):
    pass


class NoSolution(SplineError):
    pass


class NonCoprimeModuli(SplineError):
    pass


# spline constructions
class ZeroSpline(SplineError):
    pass


class NonSquarefreeModulus(SplineError):
    pass


class VerificationFailure(SplineError):
    pass


class ExpressionFailure(SplineError):
    pass


# oracle
class BudgetExceeded(SplineError):
    pass


class NoFlowUpSpline(SplineError):
    pass
