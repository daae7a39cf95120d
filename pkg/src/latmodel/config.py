"""Runtime switches read from the environment."""

import os

# Cross-check formula results against the brute-force oracles on every call.
DEBUG = os.environ.get("LATMODEL_DEBUG", "") not in ("", "0")

# Oracle cross-checks that enumerate all subsets are skipped above this many arrows.
ORACLE_MAX_ARROWS = 20
