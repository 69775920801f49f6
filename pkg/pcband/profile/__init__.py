"""
Refractive-index profiles.

Canonical, layered and expression-based periodic profiles, and the local
wavenumber they induce.
"""

from pcband.profile.base import Discontinuity, Profile, detect_symmetry, layered_profile
from pcband.profile.canonical import CANONICAL_NAMES, CanonicalProfiles, canonical_profile
from pcband.profile.expression import parse_expression, parse_profile_expr
from pcband.profile.wavenumber import (
    average_wavenumber,
    has_real_wavenumber,
    wavenumber,
    wavenumber_factor,
)

__all__ = [
    "Profile",
    "Discontinuity",
    "layered_profile",
    "detect_symmetry",
    "CanonicalProfiles",
    "canonical_profile",
    "CANONICAL_NAMES",
    "parse_expression",
    "parse_profile_expr",
    "wavenumber",
    "wavenumber_factor",
    "average_wavenumber",
    "has_real_wavenumber",
]
