"""
pcband: band structures of one-dimensional photonic crystals

Dispersion relations of periodic refractive-index profiles, graded or
layered, computed with the differential transfer-matrix method and checked
against independent oracles.
"""

__version__ = "0.3.0"
__author__ = "pcband Development Team"

from pcband.bandscan import BandScanner, scan
from pcband.config import IncidenceConfig, Pathway, Polarization, ScanConfig
from pcband.profile.base import Profile
from pcband.transfer.stratified import LayerStack

__all__ = [
    "BandScanner",
    "scan",
    "ScanConfig",
    "IncidenceConfig",
    "Polarization",
    "Pathway",
    "Profile",
    "LayerStack",
]
