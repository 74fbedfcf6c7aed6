"""
suites/kernel.py
Morphisms into [0,1] counted through their kernels, the closed invariant filters.
"""

from duality.doctrines import pair_by_name
from scale.umodules import IntervalModule, morphisms_to_I
from suites.common import all_lattices, distributive_lattices, module_for

NAME = "kernel"
DESCRIPTION = "morphisms from [0,1] and from function modules to [0,1], matched with their kernel filters"

# meets and top are asked for under the directed pair, neither under the pair of all posets
INTERVAL_COUNTS = {"directed": 2, "all": 3}


def interval_kernels(pair: str, expected: int):
    found = morphisms_to_I(IntervalModule(pair_by_name(pair)))
    if len(found) != expected:
        return f"{len(found)} morphisms, expected {expected}", {
            "filters": [f.to_json() for f, _ in found],
        }
    return None


def function_kernels(pair: str, lattice: dict):
    A = module_for("functions", lattice, pair)
    found = morphisms_to_I(A)
    if len(found) != A.X.n:
        return f"{len(found)} morphisms for {A.X.n} elements", {"filters": [f.to_json() for f, _ in found]}
    return None


CHECKS = {"interval-kernels": interval_kernels, "function-kernels": function_kernels}


def items(params: dict) -> list:
    k = params["max_size"]
    out = [("interval-kernels", {"pair": p, "expected": n}) for p, n in INTERVAL_COUNTS.items()]
    out += [("function-kernels", {"pair": "directed", "lattice": L}) for L in all_lattices(k)]
    out += [("function-kernels", {"pair": "all", "lattice": L}) for L in distributive_lattices(k)]
    return out
