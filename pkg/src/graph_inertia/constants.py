"""
Constants used throughout graph-inertia.
"""

# Application metadata
APP_VERSION = "1.0.0"
APP_NAME = "graph-inertia"

# Graph limits
MAX_ORDER = 64
GRAPH6_MAX_ORDER = 62
GRAPH6_OFFSET = 63
GRAPH6_MAX_CHAR = 126
GRAPH6_BITS_PER_CHAR = 6

# Census limits
ORACLE_MAX_ORDER = 8
SMITH_MAX_ORDER = 7
ETA_MAX_MAX_ORDER = 7
EXHAUSTIVE_CANON_MAX_ORDER = 8

# B_k families
BK_MIN_K = 3
CLASSIFY_MIN_K = 4
CLASSIFY_MAX_K = 14
DSTAR_MAX_ORDER = 14
THM23_MIN_K = 3
THM23_MAX_K = 12
LEMMA49_ORDER = 15
LEMMA412_ORDERS = (16, 17)
TABLE1_TOTAL = 175
TABLE1_COUNTS = {4: 0, 5: 0, 6: 7, 7: 15, 8: 39, 9: 36, 10: 43, 11: 20, 12: 12, 13: 2, 14: 1}

# Floating point
DEFAULT_TOLERANCE = 1e-12
FLOAT_SIGN_THRESHOLD = 1e-8
JACOBI_MAX_SWEEPS = 100
SPECTRUM_MATCH_TOLERANCE = 1e-6
FIG3_TOLERANCE = 5e-5
FLOAT_SIGNIFICANT_DIGITS = 10

# Reports
MAX_REPORTED_SAMPLES = 20

# Paths
CONFIG_DIR_NAME = ".graph_inertia"
CACHE_FILE_NAME = "census.db"
PROJECT_CONFIG_NAMES = (".graph-inertia.yml", ".graph-inertia.yaml")
ENV_PREFIX = "GRAPH_INERTIA_"

# Golden data
TABLE1_GOLDEN = "table1_names.txt"
TABLE2_GOLDEN = "table2_counts.json"
UNVERIFIED_MARKER = "?"

# Logging
DEFAULT_LOG_LEVEL = "INFO"
LOG_DIR_NAME = "logs"
LOG_FILE_NAME = "graph-inertia.log"
