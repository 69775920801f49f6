"""
Numerical constants and tolerances used throughout pcband.

This module contains the mathematical constants, tolerances and algorithm
parameters shared by the quadrature, transfer-matrix, dispersion and oracle
code. All lengths are in units of the period L unless noted.
"""

import math

# Mathematical constants
PI = math.pi
TWO_PI = 2.0 * math.pi

# Conversion factors
DEG_TO_RAD = PI / 180.0
RAD_TO_DEG = 180.0 / PI

# Canonical profiles
CANONICAL_PERIOD = 1.0  # Period of every canonical profile
CANONICAL_N_MIN = 1.0  # Lowest index of the canonical profiles
CANONICAL_N_MAX = 3.0  # Highest index of the canonical profiles

# Profile sampling
PROFILE_SAMPLE_POINTS = 1024  # Grid used to validate n > 0 and bound n
FD_STEP_FRACTION = 1e-6  # Central difference step for expression profiles (× L)
SYMMETRY_TOLERANCE = 1e-12  # |n(x) - n(-x)| allowed for auto-detected symmetry
POSITION_TOLERANCE = 1e-12  # Positions closer than this (× L) are the same point

# Adaptive Gauss-Legendre quadrature
GAUSS_LEGENDRE_ORDER = 7  # Nodes per panel
QUADRATURE_ABS_TOL = 1e-10  # Entrywise absolute tolerance
QUADRATURE_MAX_DEPTH = 24  # Maximum panel bisection depth
PANELS_PER_OSCILLATION = 20  # Minimum panels per 2π of local phase
PHASE_SAMPLE_POINTS = 257  # Samples used to measure phase variation on an interval

# Wavenumber guards
CUTOFF_GUARD = 1e-8  # Minimum |k| / k0 tolerated inside an integration interval

# 2x2 matrix exponential
EXP_SCALED_NORM = 0.5  # Scale until the norm is at most this value
EXP_TAYLOR_TERMS = 18  # Taylor terms after scaling
TRACELESS_TOLERANCE = 1e-12  # |tr M| / ||M|| accepted as traceless
SINHC_SERIES_THRESHOLD = 1e-6  # Below this |λ| use the series for sinh(λ)/λ

# Symmetric fast path
MONOTONIC_SAMPLE_POINTS = 256  # Samples used to check k(x) monotonic on [0, L/2]
INVERSE_BISECTION_TOLERANCE = 1e-12  # x(k) inversion tolerance (× L)

# Dispersion classification
EDGE_TOLERANCE = 1e-12  # ||c| - 1| below this is a band edge
REAL_OUTPUT_TOLERANCE = 1e-10  # Residual imaginary part allowed in the fast path

# Band scanning
BISECTION_OMEGA_TOLERANCE = 1e-9  # Gap edge bracketing width in Ω
MAX_FAILED_FRACTION = 0.05  # Above this fraction of failed samples the scan fails
LOW_FREQ_OMEGA_MIN = 0.001  # Low-frequency fit range in Ω
LOW_FREQ_OMEGA_MAX = 0.01
LOW_FREQ_POINTS = 20
DEFAULT_STAIRCASE_LAYERS = 256  # Layers used by the stratified pathway for continuous profiles
FOLD_DETECTION_LEVEL = 0.9  # |c| above which a reversal of c marks a closed zone boundary

# Oracles
MONODROMY_STEPS = 20000  # RK4 steps per period
WRONSKIAN_TOLERANCE = 1e-6  # Allowed |det W - 1|
STAIRCASE_N_MAX = 1024  # Finest layer count for the staircase limit
STAIRCASE_MIN_N_MAX = 64
CONVERGENCE_FLOOR = 1e-12  # Successive differences below this count as converged

# Verification thresholds
VERIFY_TOL_STRATIFIED = 1e-8
VERIFY_TOL_CONTINUOUS = 1e-3
VERIFY_OMEGA_MIN = 0.01
VERIFY_OMEGA_MAX = 1.5
VERIFY_OMEGA_POINTS = 31
REFERENCE_OFFSETS = 8  # Window offsets used by the reference-point diagnostic

# Environment
THREADS_ENV_VAR = "PCBAND_THREADS"
