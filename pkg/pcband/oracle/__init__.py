"""
Independent oracles for cos(κL).

The monodromy integrator, the closed-form two-layer dispersion relation and
the Richardson-extrapolated staircase limit, plus the verification run that
compares the dispersion pathways against them.
"""

from pcband.oracle.monodromy import MonodromyIntegrator, monodromy_cos
from pcband.oracle.staircase import StaircaseEstimate, staircase_limit_cos
from pcband.oracle.two_layer import analytic_two_layer, two_layer_parameters
from pcband.oracle.verification import (
    ORACLE_KINDS,
    VerificationReport,
    parse_oracle_selection,
    verify,
)

__all__ = [
    "MonodromyIntegrator",
    "monodromy_cos",
    "StaircaseEstimate",
    "staircase_limit_cos",
    "analytic_two_layer",
    "two_layer_parameters",
    "ORACLE_KINDS",
    "VerificationReport",
    "parse_oracle_selection",
    "verify",
]
