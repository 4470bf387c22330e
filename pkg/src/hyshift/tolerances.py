"""Numeric tolerances and horizon defaults used across the package.

All criterion arithmetic runs in the log domain.  Comparisons against
thresholds (log T) use a symmetric band of LOG_TOL; values inside the band
that are not exactly certified are reported as boundary cases rather than
silently rounded to a side.
"""

# Band for comparing a log-domain criterion value against a threshold.
LOG_TOL = 1e-9

# Additivity tolerance for window sums, per term.
WINDOW_TOL_PER_TERM = 1e-12

# Relative tolerance for polynomial-orbit cross-checks.
POLY_REL_TOL = 1e-9

# |log coefficient| above this is flagged as outside double range on export.
OVERFLOW_LOG = 700.0

# Default analysis horizons.
DEFAULT_N_MAX = 32
DEFAULT_K_HORIZON = 1024
DEFAULT_M_MAX = 8
DEFAULT_J_MAX = 8

# Hard cap for certified scans that need to walk out to an eventual-monotone
# threshold; beyond this the decision degrades to HorizonOnly.
MAX_CERTIFIED_SCAN = 1 << 20

# A block certificate is only reported when the certified log constant clears
# this margin; tail limits closer to 0 are treated as boundary cases.
CERT_MIN_LOG = 1e-6

# Uncertified criterion values within this band of log 1 are reported as
# Boundary rather than being rounded to either side.
BOUNDARY_BAND = 1e-6

# Cap for arithmetic extension of the power index when a per-period growth
# law is used to find a positive block without scanning.
MAX_LAW_EXTENSION_N = 1 << 22

# Most stages a constructed divergence witness may carry.
MAX_WITNESS_STAGES = 4096

# Extended-precision budget for exact polynomial powers: n * degree.
MAX_POLY_BUDGET = 64
