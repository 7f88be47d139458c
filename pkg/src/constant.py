import math

TOOL_NAME = "qwalk-meeting"
VERSION = "1.0.0"

SQRT2 = math.sqrt(2.0)

AMPLITUDE_TOLERANCE = 1e-12  # norms, unitarity, amplitude-level identities
PROBABILITY_TOLERANCE = 1e-10  # distributions summing to one

QUAD_ABS_TOLERANCE = 1e-13
QUAD_REL_TOLERANCE = 1e-12
QUAD_LIMIT = 200

PRINTED_FORMULA_TOLERANCE = 1e-6  # relative, printed elliptic expression vs. reduced form

EXACT_BINOMIAL_MAX_T = 1000  # above this, binomials go through log-gamma

OVERALL_WIDTH_LEVEL = 0.5  # width(T) = max{d : overall(T, d) >= level}

ORACLE_TOLERANCE = 1e-10  # runtime oracle cross-check, amplitudes and meeting values
SWEEP_CHUNK_SIZE = 32  # half-separations per overall-sweep job
