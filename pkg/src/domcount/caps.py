"""Enumeration caps.

Every exhaustive kernel refuses to start when its search space exceeds
``2**cap_bits``. The defaults keep desk-scale runs short; the environment
variable ``DOMCOUNT_CAP_BITS`` overrides every default, and an explicit
``cap_bits`` argument overrides both.
"""

from __future__ import annotations

import math
import os

from .errors import CapExceededError

ENV_VAR = "DOMCOUNT_CAP_BITS"

SUBSET_CAP_BITS = 26
COLORING_CAP_BITS = 30

# Generator caps (vertex counts), overridable per call.
MAX_LABELED_GRAPH_N = 6
MAX_LABELED_TREE_N = 9
MAX_LABELED_REGULAR_N = 10


def cap_bits(explicit: int | None, default: int) -> int:
    if explicit is not None:
        if explicit <= 0:
            raise ValueError(f"cap bits must be positive, got {explicit}")
        return explicit
    env = os.environ.get(ENV_VAR)
    if env:
        value = int(env)
        if value <= 0:
            raise ValueError(f"{ENV_VAR} must be positive, got {env!r}")
        return value
    return default


def check_space(base: int, exponent: int, explicit: int | None, default: int, what: str) -> None:
    """Raise CapExceededError if ``base**exponent`` exceeds the cap."""
    bits = cap_bits(explicit, default)
    if base <= 1 or exponent == 0:
        return
    if exponent * math.log2(base) > bits + 1e-12:
        raise CapExceededError(
            f"{what}: search space {base}^{exponent} exceeds cap 2^{bits}"
        )
