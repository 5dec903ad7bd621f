import os
from pathlib import Path

TILTCELL_CACHE = Path(
    os.getenv("TILTCELL_CACHE") or Path.joinpath(Path.home(), ".tiltcell")
)
SCHEMA_VERSION = 1
DEFAULT_TRUNCATION = 14
## settled cells at L + STABILITY_STEP, those with upper closure in ball(L - STABILITY_STEP), must be cells at L
STABILITY_STEP = 2
## share of cached KL elements recomputed by `tiltcell cache verify`
CACHE_VERIFY_FRACTION = 0.05
KL_CACHE_PREFIX = "kl_"

SUPPORTED_FAMILIES = ["A", "B", "C", "D", "E", "F", "G"]

NODE_ATTRIBUTES = [
    ## core fields - every alcove node has these
    "curie:ID",
    ":LABEL",
    "name",
    ## alcove fields
    "length:int",
    "cell:int",
    "finite_part",
    "translation",
]
EDGE_ATTRIBUTES = [
    ":START_ID",
    ":END_ID",
    ":TYPE",
    ## generator whose KL product produced the edge
    "generators:string[]",
]

EXIT_OK = 0
## uncaught exceptions, reported as an internal-error object
EXIT_INTERNAL_ERROR = 1
EXIT_INVALID_CONFIG = 2
EXIT_INCONCLUSIVE_TRUNCATION = 3
EXIT_INVARIANT_VIOLATION = 4
