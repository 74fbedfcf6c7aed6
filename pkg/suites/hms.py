"""
suites/hms.py
Two-valued duality: every finite lattice is recovered from its compacts under
the directed pair, every small inflattice from its lower sets under all four
pairs, and duals of morphisms compose contravariantly.
"""

import numpy as np

from core.errors import PreconditionError, UnsupportedInstance
from duality.doctrines import PAIR_ORDER, pair_by_name
from duality.two_duality import (
    double_dual_check,
    dual_morphism,
    dual_of_lattice,
    lattice_morphism_laws,
    roundtrip,
)
from order.enumerate import lattices_up_to
from order.poset import compose, identity, monotone_maps
from suites.common import all_lattices, all_posets, load, outcome

NAME = "hms"
DESCRIPTION = "X recovered from its dual for every lattice up to max_size, small inflattices under all four pairs, and dual maps compose contravariantly"

FUNCTOR_SAMPLES = 100
FUNCTOR_MAX_SIZE = 4
INFLATTICE_MAX_SIZE = 5


def lattice_roundtrip(pair: str, lattice: dict):
    roundtrip(load(lattice), pair_by_name(pair))


def double_dual(pair: str, lattice: dict):
    p = pair_by_name(pair)
    return outcome(double_dual_check(dual_of_lattice(load(lattice), p), p))


def inflattice_double_dual(pair: str, poset: dict):
    p = pair_by_name(pair)
    try:
        report = double_dual_check(load(poset), p)
    except PreconditionError as e:
        raise UnsupportedInstance(f"not a {p.psi.name} inflattice: {e}")
    return outcome(report)


def _morphisms(X, Y, pair) -> list:
    return [f for f in monotone_maps(X, Y) if lattice_morphism_laws(f, pair.phi) is None]


def dual_functor(pair: str, seed: int, index: int, max_size: int):
    p = pair_by_name(pair)
    rng = np.random.default_rng([seed, index])
    corpus = lattices_up_to(max_size)
    X, Y, Z = (corpus[int(rng.integers(0, len(corpus)))] for _ in range(3))
    fs, gs = _morphisms(X, Y, p), _morphisms(Y, Z, p)
    if not fs or not gs:
        raise UnsupportedInstance("no lattice morphisms between the sampled lattices")
    f = fs[int(rng.integers(0, len(fs)))]
    g = gs[int(rng.integers(0, len(gs)))]

    if dual_morphism(identity(X), p) != identity(dual_of_lattice(X, p)):
        return "dual of the identity is not the identity", {"X": X.n}
    lhs = dual_morphism(compose(g, f), p)
    rhs = compose(dual_morphism(f, p), dual_morphism(g, p))
    if lhs != rhs:
        return "dual of g after f differs from dual f after dual g", {
            "f": list(f.values), "g": list(g.values), "lhs": list(lhs.values), "rhs": list(rhs.values),
        }
    return None


CHECKS = {
    "lattice-roundtrip": lattice_roundtrip,
    "double-dual": double_dual,
    "inflattice-double-dual": inflattice_double_dual,
    "dual-functor": dual_functor,
}


def items(params: dict) -> list:
    out = []
    for lattice in all_lattices(params["max_size"]):
        out.append(("lattice-roundtrip", {"pair": "directed", "lattice": lattice}))
        out.append(("double-dual", {"pair": "directed", "lattice": lattice}))
    for poset in all_posets(min(INFLATTICE_MAX_SIZE, params["max_size"])):
        for pair in PAIR_ORDER:
            out.append(("inflattice-double-dual", {"pair": pair, "poset": poset}))
    samples = params.get("samples", FUNCTOR_SAMPLES)
    size = min(FUNCTOR_MAX_SIZE, params["max_size"])
    for i in range(samples):
        out.append(("dual-functor", {"pair": "directed", "seed": params["seed"], "index": i, "max_size": size}))
    return out
