"""
config.py - Runtime Limits

All tunables live here as module constants. The face budget for homology
can be overridden per process with the CDGOR_BUDGET environment variable
and per command with --budget.
"""

import os
from typing import Optional


# =============================================================================
# LIMITS
# =============================================================================

DEFAULT_FACE_BUDGET = 50_000       # faces per complex for homology certification
DEFAULT_ISO_BUDGET = 200           # elements per poset for isomorphism testing
HOMOLOGY_GRID_LIMIT = 2            # grid entries with every coordinate <= this get homology
BUDGET_ENV_VAR = "CDGOR_BUDGET"


def face_budget(override: Optional[int] = None) -> int:
    """
    Resolve the homology face budget.

    Precedence: explicit override, then $CDGOR_BUDGET, then the default.

    Args:
        override: Value passed on the command line, if any

    Returns:
        Positive face budget
    """
    if override is not None:
        budget = override
    else:
        raw = os.environ.get(BUDGET_ENV_VAR)
        if raw is None or raw.strip() == "":
            return DEFAULT_FACE_BUDGET
        try:
            budget = int(raw)
        except ValueError:
            raise ValueError(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}")
    if budget <= 0:
        raise ValueError(f"face budget must be positive, got {budget}")
    return budget
