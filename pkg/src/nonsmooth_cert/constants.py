"""Application-wide constants."""

from pathlib import Path

# Config file resolution (CLI flag > ENV var > ~/.nonsmooth-cert.json > built-in defaults)
CONFIG_ENV_VAR = "NONSMOOTH_CERT_CONFIG"
USER_CONFIG_FILE_NAME = ".nonsmooth-cert.json"

# Log layout under --log-dir
DIR_LOGS_STRUCTURED = "structured"
DIR_LOGS_TEXT = "text"
LOG_FILE_PREFIX = "nonsmooth-cert"

# Component kinds of the linear models
KIND_CP2 = "cp2"
KIND_CP2BAR = "cp2bar"
KIND_S4 = "s4"
COMPONENT_KINDS = (KIND_CP2, KIND_CP2BAR, KIND_S4)

# Fixed point labels, in enumeration order
CP2_POINT_LABELS = ("[1,0,0]", "[0,1,0]", "[0,0,1]")
S4_POINT_LABELS = ("north", "south")

# Weight families with closed-form triplet counts
FAMILY_ALPHA_0 = (-1, 0, 1)
FAMILY_ALPHA_PRIME_0 = (-1, 1, 2)
CLOSED_FORM_FAMILIES = (FAMILY_ALPHA_0, FAMILY_ALPHA_PRIME_0)

# K3 pattern at p = 11 (cycled over 16 conjugate CP2 components)
K3_PRIME = 11
K3_CYCLE = ((-1, 1, 2), (-1, 2, 3), (-1, 3, 4), (-2, 2, 4))
K3_COMPONENTS = 16
K3_PAIRS = 12
K3_B2_PLUS = 3
K3_B2_MINUS = 19
K3_MAX_STABILIZATION = 3

# Search strategies
STRATEGY_LEMMA42 = "lemma42"
STRATEGY_THM13 = "thm13"
STRATEGY_THM14 = "thm14"
STRATEGY_BOUNDED = "bounded"
STRATEGIES = (STRATEGY_LEMMA42, STRATEGY_THM13, STRATEGY_THM14, STRATEGY_BOUNDED)

# Output formats
FORMAT_JSON = "json"
FORMAT_CSV = "csv"
FORMAT_TEXT = "text"
OUTPUT_FORMATS = (FORMAT_JSON, FORMAT_CSV, FORMAT_TEXT)

SWEEP_CSV_HEADER = ("p", "found", "dim", "family", "runtime_ms")

# CLI exit codes
EXIT_OK = 0
EXIT_NOT_FOUND = 1
EXIT_MALFORMED = 2

# Default configuration values
DEFAULT_SPHERE_WEIGHT = (1, 2)
DEFAULT_POOL_LIMIT = 5
DEFAULT_MAX_PERIOD = 4
DEFAULT_MAX_EXTRA_COMPONENTS = 4
DEFAULT_SWEEP_WORKERS = 4
MAX_SWEEP_WORKERS = 32
DEFAULT_PRIME_MIN = 5
DEFAULT_PRIME_MAX = 199
DEFAULT_LOG_LEVEL = "WARNING"
DEFAULT_LOG_FORMAT = "text"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
LOG_FORMATS = ("text", "json")

# Reproduction target table shipped with the package
REPRODUCTION_TABLE = Path(__file__).parent / "data" / "reproduction.yaml"

# Recorded on every realizability report
REALIZABILITY_PROVENANCE = (
    "REP, GSF and TOR follow from m - m' = sigma, 3(m+m') + 2r - 2s = chi "
    "and the presence of s disjoint cancelling pairs"
)
