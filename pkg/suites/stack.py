"""
suites/stack.py
Stacking: gluing pieces on the 1/16 grid, rejection of incompatible pairs,
unstacking, and the extended action of maps that do not fix 0.
"""

from fractions import Fraction

from core.errors import IncompatibleError
from order.enumerate import lattices_up_to
from scale.interval import POSITIVE, IS_ONE, canonical_r_iso, random_uhat, trunc_add
from scale.rational import dot_plus, fmt
from scale.umodules import (
    check_uhat_meets,
    extend_to_uhat,
    stack_glue,
    unstack_verify,
)
from suites.common import module_for, outcome, poset_args, rng_for

NAME = "stack"
DESCRIPTION = "stack_glue round trips and rejections, unstacking, and the extended action on [0,1] and function modules"

GRID = 16


def _grid_elements(A) -> list:
    points = [Fraction(k, GRID) for k in range(GRID + 1)]
    if A.name == "interval":
        return points
    X = A.X
    out = []
    for v in points:
        values = [v if x == X.bottom else Fraction(1) for x in range(X.n)]
        if A.violation(tuple(values)) is None:
            out.append(tuple(values))
    return out


def glue(module: str, r: str, lattice: dict = None):
    A = module_for(module, lattice)
    r = Fraction(r)
    lower, upper = canonical_r_iso(r, "lower"), canonical_r_iso(r, "upper")
    elements = _grid_elements(A)
    for a in elements:
        for b in elements:
            compatible = A.leq(A.apply(POSITIVE, b), A.apply(IS_ONE, a))
            try:
                c = stack_glue(A, r, a, b)
            except IncompatibleError:
                if compatible:
                    return "compatible pair rejected", {"a": A.to_json(a), "b": A.to_json(b)}
                continue
            if not compatible:
                return "incompatible pair glued", {"a": A.to_json(a), "b": A.to_json(b)}
            if A.act(lower, c) != a or A.act(upper, c) != b:
                return "glued element does not restrict to its pieces", {"a": A.to_json(a), "b": A.to_json(b)}
    return None


def unstack(module: str, r: str, lattice: dict = None):
    A = module_for(module, lattice)
    r = Fraction(r)
    partition = [r, (r + 1) / 2, Fraction(1)]
    elements = _grid_elements(A)
    for a in elements:
        for b in elements:
            if not unstack_verify(A, a, b, partition):
                return "pieces within r do not give a <=_r b", {"a": A.to_json(a), "b": A.to_json(b)}
    return None


def uhat_shift(r: str):
    """extend_to_uhat(x -> x + r) is truncated addition on [0,1]."""
    A = module_for("interval")
    r = Fraction(r)
    w = trunc_add(r)
    for k in range(GRID + 1):
        a = Fraction(k, GRID)
        if extend_to_uhat(A, w, a) != dot_plus(a, r):
            return "extended action differs from truncated addition", {"a": fmt(a)}
    return None


def uhat_meets(module: str, seed: int, lattice: dict = None, count: int = 20):
    A = module_for(module, lattice)
    rng = rng_for({"seed": seed}, 3)
    for _ in range(count):
        w = random_uhat(rng)
        pairs = [(A.sample(rng), A.sample(rng)) for _ in range(5)]
        found = outcome(check_uhat_meets(A, w, pairs))
        if found is not None:
            return found
    return None


CHECKS = {"glue": glue, "unstack": unstack, "uhat-shift": uhat_shift, "uhat-meets": uhat_meets}


def items(params: dict) -> list:
    seed = params["seed"]
    lattices = poset_args([X for X in lattices_up_to(max(2, params["max_size"])) if X.n >= 2])
    interior = [fmt(Fraction(k, GRID)) for k in range(1, GRID)]
    out = []
    for r in interior:
        out.append(("glue", {"module": "interval", "r": r}))
        out.append(("unstack", {"module": "interval", "r": r}))
        for lattice in lattices:
            out.append(("glue", {"module": "functions", "r": r, "lattice": lattice}))
    for k in range(GRID + 1):
        out.append(("uhat-shift", {"r": fmt(Fraction(k, GRID))}))
    out.append(("uhat-meets", {"module": "interval", "seed": seed}))
    for lattice in lattices:
        out.append(("uhat-meets", {"module": "functions", "seed": seed, "lattice": lattice}))
    return out
