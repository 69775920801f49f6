"""
Unit conversion utilities for pcband.

Frequencies are handled in normalized form Ω = L/λ₀; these helpers move
between Ω, the free-space wavenumber k0 and the vacuum wavelength, and
between degrees and radians.
"""

from pcband.constants import DEG_TO_RAD, RAD_TO_DEG, TWO_PI


class UnitConversions:
    """
    Static methods for unit conversions used in pcband calculations.

    All methods are static and can be called without instantiating the class.
    """

    @staticmethod
    def deg_to_rad(degrees: float) -> float:
        """
        Convert angle from degrees to radians.

        Args:
            degrees: Angle in degrees

        Returns:
            Angle in radians

        Example:
            >>> UnitConversions.deg_to_rad(180.0)
            3.141592...
        """
        return degrees * DEG_TO_RAD

    @staticmethod
    def rad_to_deg(radians: float) -> float:
        """
        Convert angle from radians to degrees.

        Args:
            radians: Angle in radians

        Returns:
            Angle in degrees
        """
        return radians * RAD_TO_DEG

    @staticmethod
    def omega_to_k0(omega_norm: float, period: float = 1.0) -> float:
        """
        Free-space wavenumber from normalized frequency.

        Args:
            omega_norm: Normalized frequency Ω = L/λ₀
            period: Period length L

        Returns:
            k0 = 2πΩ/L

        Example:
            >>> UnitConversions.omega_to_k0(0.5)
            3.141592...
        """
        if period <= 0:
            raise ValueError("Period must be greater than zero")
        return TWO_PI * omega_norm / period

    @staticmethod
    def k0_to_omega(k0: float, period: float = 1.0) -> float:
        """Normalized frequency Ω = k0·L/(2π)."""
        if period <= 0:
            raise ValueError("Period must be greater than zero")
        return k0 * period / TWO_PI

    @staticmethod
    def omega_to_wavelength(omega_norm: float, period: float = 1.0) -> float:
        """Vacuum wavelength λ₀ = L/Ω, in the same length unit as the period."""
        if omega_norm <= 0:
            raise ValueError("Normalized frequency must be greater than zero")
        return period / omega_norm
