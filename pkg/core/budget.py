"""
core/budget.py
Size budgets that keep exhaustive searches from running away.
Every bound can be raised at once with ORDKIT_MAX_SIZE.
"""

import os

from core.errors import SizeGuardError

# Largest carrier each operation accepts by default
SIZE_BUDGETS = {
    "enumerate_posets":   7,
    "enumerate_lattices": 8,
    "phi_star":           6,
    "phi_of":            12,
    "lower_set_lattice": 12,
    "waydown":           12,
    "distributivity":    10,
    "saturation":         4,
    "function_module":    8,
}

# Default corpus sizes for each suite (`--max-size` overrides per run)
SUITE_CORPUS = {
    "saturation":        4,
    "sound4":            5,
    "commutation":       3,
    "cts-equiv":         5,
    "interpolation":     6,
    "hms":               7,
    "birkhoff":          8,
    "umod-metric":       4,
    "stack":             2,
    "urysohn":           6,
    "gelfand-roundtrip": 6,
    "kernel":            5,
    "approx-inverse":    4,
}

_override = os.environ.get("ORDKIT_MAX_SIZE")
MAX_SIZE_OVERRIDE = int(_override) if _override else None

# Checked after the carrier bound, on every lower-set enumeration. phi_star enumerates
# the lower sets of a lower-set lattice, so on wide posets this cap ends it before
# the carrier bound does: the 6-element antichain passes phi_star's bound of 6 but its
# second level has 7828354 lower sets. Chains and other narrow posets reach the bound.
MAX_LOWER_SETS = int(os.environ.get("ORDKIT_MAX_LOWER_SETS", 20000))

# Exhaustive family searches (saturation (ii), distributivity) look at families up to this size
MAX_FAMILY = int(os.environ.get("ORDKIT_MAX_FAMILY", 3))

DEFAULT_SEED = int(os.environ.get("ORDKIT_SEED", 20240611))
WORKERS = int(os.environ.get("ORDKIT_WORKERS", min(4, os.cpu_count() or 1)))


def get_size_budget(operation: str) -> int:
    if MAX_SIZE_OVERRIDE is not None:
        return MAX_SIZE_OVERRIDE
    return SIZE_BUDGETS.get(operation, 12)


def get_corpus_size(suite: str, requested: int = None) -> int:
    if requested is not None:
        return requested
    if MAX_SIZE_OVERRIDE is not None:
        return MAX_SIZE_OVERRIDE
    return SUITE_CORPUS.get(suite, 4)


def guard_size(operation: str, size: int, bound: int = None):
    limit = bound if bound is not None else get_size_budget(operation)
    if size > limit:
        raise SizeGuardError(operation, size, limit)
