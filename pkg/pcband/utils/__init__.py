"""Utility modules: unit conversions, input validation and adaptive quadrature."""

from pcband.utils.conversions import UnitConversions
from pcband.utils.quadrature import AdaptiveQuadrature
from pcband.utils.validation import InputValidator

__all__ = ["UnitConversions", "InputValidator", "AdaptiveQuadrature"]
