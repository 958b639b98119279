"""Exception types raised across the package.

Each class carries a short machine-friendly name so the CLI can map
failures to exit codes without string matching.
"""

from __future__ import annotations


class TrigalError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class InputError(TrigalError):
    """Invalid user input (bad configuration, coincident branch points)."""

    exit_code = 2


class NumericalFailure(TrigalError):
    """A numerical procedure did not converge or lost accuracy."""

    exit_code = 3


class BranchPointInput(InputError):
    pass


class ConfigError(InputError):
    pass


class ContinuationFailure(NumericalFailure):
    pass


class QuadratureStall(NumericalFailure):
    pass


class BasisConstructionFailure(NumericalFailure):
    pass


class NonIntegralSolution(NumericalFailure):
    pass


class TruncationInsufficient(NumericalFailure):
    pass


class CharacteristicAmbiguous(NumericalFailure):
    pass


class DegenerateNormalization(NumericalFailure):
    pass


class ContourTooClose(NumericalFailure):
    pass


class RootDeflationFailure(NumericalFailure):
    pass


class DegenerateBase(TrigalError):
    """The divisor sits on a locus where the requested quantity is undefined."""

    exit_code = 2


class VerticalLine(DegenerateBase):
    pass


class DegenerateConfiguration(DegenerateBase):
    pass


class OnThetaDivisor(DegenerateBase):
    pass


class BranchDegeneracy(DegenerateBase):
    pass
