"""
suites/approx_inverse.py
Elements rebuilt from their filters at grades i/n land within 2/n of the original.
"""

import math
from fractions import Fraction

import numpy as np

from duality.gelfand import approximate_inverse, iota
from order.enumerate import lattices_up_to
from scale.umodules import dist, le_r
from suites.common import module_for, poset_args

NAME = "approx-inverse"
DESCRIPTION = "approximate_inverse(iota(a), n) is within 2/n of a for seeded a and n in 2, 4, 8, 16"

ELEMENTS = 20
GRADES = (2, 4, 8, 16)


def approx(module: str, a, n: int, lattice: dict = None):
    A = module_for(module, lattice)
    a0 = A.from_json(a)
    out = approximate_inverse(A, iota(A, a0), n)
    bound = Fraction(2, n)
    if not (le_r(A, out, a0, bound) and le_r(A, a0, out, bound)):
        return "rebuilt element is not within 2/n", {"result": A.to_json(out)}
    if A.rho(out, a0) is not None and dist(A, out, a0) > bound:
        return "rebuilt element is further than 2/n", {"result": A.to_json(out)}
    if module == "interval" and out != Fraction(math.floor(n * a0), n):
        return "rebuilt point is not the grid point below", {"result": A.to_json(out)}
    return None


CHECKS = {"approx-inverse": approx}


def items(params: dict) -> list:
    instances = [("interval", None), ("infinitesimal", None)]
    instances += [("functions", L) for L in poset_args(lattices_up_to(params["max_size"])) if L["n"] >= 2]
    out = []
    for i in range(params.get("samples", ELEMENTS)):
        module, lattice = instances[i % len(instances)]
        A = module_for(module, lattice)
        a = A.to_json(A.sample(np.random.default_rng([params["seed"], 7, i])))
        for n in GRADES:
            args = {"module": module, "a": a, "n": n}
            if lattice is not None:
                args["lattice"] = lattice
            out.append(("approx-inverse", args))
    return out
