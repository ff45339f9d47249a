"""
Common constants and global variables.
"""
import logging

# Representation tags, also used verbatim in FiducialFile JSON.
STANDARD = "std"
PHASE_PERMUTATION = "pp"
BASIS_TAGS = (STANDARD, PHASE_PERMUTATION)

#
# Exact monomial arithmetic
#

# Amplitude threshold and angular tolerance when snapping dense matrices.
SNAP_TOL = 1e-9
# Admissible phase denominators are MAX_DENOM_FACTOR * N.
MAX_DENOM_FACTOR = 24
ORDER_CAP = 10**6

#
# Group enumeration
#

STABILIZER_MAX_DIM = 100
CLOSURE_BUDGET = 100000
INTERTWINE_TOL = 1e-10
BASIS_CHANGE_TOL = 1e-12
ORDER3_TOL = 1e-9

#
# States and searches
#

UNIT_NORM_TOL = 1e-10
FIDUCIAL_NORM_TOL = 1e-12
SUBSPACE_TOL = 1e-12
FILE_NORM_TOL = 1e-9
SCHMIDT_COSET_TOL = 1e-8
COINCIDENCE_TOL = 1e-9
DEFAULT_RESTARTS = 8
DEFAULT_MAX_ITERS = 4000
DEFAULT_SEARCH_TOL = 1e-9
# A search only counts as converged once every overlap is this close to
# 1/(N+1); the frame-potential excess alone pins them to about sqrt(tol).
OVERLAP_CERT_TOL = 1e-9
DEFAULT_CHECK_TOL = 1e-7
SEARCH_METHODS = ("cg", "steepest")

#
# Theta functions
#

THETA_TRUNC = 40
THETA_TAIL_LIMIT = 1e-10
THETA_SAMPLES = (0j, 0.1 + 0j, 0.3 + 0.2j, -0.25 + 0.1j, 0.5 + 0.5j)

#
# Command line
#

(EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INCOMPLETE) = range(4)

# for debugging
DEBUG = logging.DEBUG
INFO = logging.INFO
WARNING = logging.WARNING
ERROR = logging.ERROR
CRITICAL = logging.CRITICAL
