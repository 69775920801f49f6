"""
Exception hierarchy for pcband.

Invalid input raises subclasses of ValueError and numerical trouble raises
subclasses of RuntimeError, so callers that only know the builtins still
catch the right things. The CLI maps the two families to different exit codes.
"""

from typing import Optional


class ProfileError(ValueError):
    """Invalid refractive-index profile."""


class ProfileSyntaxError(ProfileError):
    """Malformed profile expression, annotated with the character position."""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        pointer = " " * position + "^"
        super().__init__(f"{message} at position {position}\n  {text}\n  {pointer}")


class UnknownIdentifierError(ProfileSyntaxError):
    """Identifier that is neither `x`, a constant nor a known function."""


class NonPositiveIndexError(ProfileError):
    """Refractive index not strictly positive somewhere on the sample grid."""


class DiscontinuityError(ProfileError):
    """An interval handed to a smooth-profile routine contains an index jump."""


class ConfigurationError(ValueError):
    """Inconsistent scan, incidence or CLI configuration."""


class NumericalError(RuntimeError):
    """Base class for failures of a numerical procedure."""


class QuadratureError(NumericalError):
    """Adaptive quadrature did not converge within the maximum refinement depth."""

    def __init__(self, message: str, worst_estimate: Optional[float] = None):
        self.worst_estimate = worst_estimate
        super().__init__(message)


class CutoffSingularityError(NumericalError):
    """Local wavenumber vanishes (or nearly so) inside an integration interval."""


class NotTracelessError(NumericalError):
    """Matrix handed to a traceless-only routine has a non-negligible trace."""


class ScanError(NumericalError):
    """Too many samples of a frequency scan failed."""


class OracleError(NumericalError):
    """An oracle precondition or self-check failed."""
