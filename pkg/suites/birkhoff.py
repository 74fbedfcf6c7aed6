"""
suites/birkhoff.py
Two-valued duality for the pair of all posets: finite distributive lattices
are the lattices of lower sets of their join-irreducibles, and every other
lattice is rejected with a family witnessing the failure.
"""

from core.errors import PreconditionError
from duality.continuity import is_continuous, meet_distributivity_witness
from duality.doctrines import ALL_POSETS, pair_by_name
from duality.two_duality import double_dual_check, dual_of_lattice, roundtrip
from order.enumerate import lattices_up_to, posets_up_to
from order.poset import FinPoset, is_distributive
from suites.common import distributive_lattices, load, outcome, poset_args

NAME = "birkhoff"
DESCRIPTION = "distributive lattices up to max_size recovered from their duals; M3, N5 and the rest rejected"

# lower-set lattices of bigger posets exceed the way-below budget
DOUBLE_DUAL_POSETS = 3

NAMED = {
    "M3": FinPoset.from_covers(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], ["0", "a", "b", "c", "1"]),
    "N5": FinPoset.from_covers(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)], ["0", "a", "b", "c", "1"]),
}


def lattice_roundtrip(lattice: dict):
    roundtrip(load(lattice), pair_by_name("all"))


def rejected(lattice: dict):
    X = load(lattice)
    if is_continuous(X, ALL_POSETS):
        return "a non-distributive lattice passed as continuous", {"n": X.n}
    if meet_distributivity_witness(X, ALL_POSETS) is None:
        return "no family witnesses the failure of distributivity", {"n": X.n}
    try:
        dual_of_lattice(X, pair_by_name("all"))
    except PreconditionError:
        return None
    return "dual of a non-distributive lattice was built", {"n": X.n}


def named(name: str):
    from formats.codec import poset_to_json
    return rejected(poset_to_json(NAMED[name]))


def double_dual(poset: dict):
    return outcome(double_dual_check(load(poset), pair_by_name("all")))


CHECKS = {
    "lattice-roundtrip-all": lattice_roundtrip,
    "rejected": rejected,
    "named-rejection": named,
    "double-dual-all": double_dual,
}


def items(params: dict) -> list:
    k = params["max_size"]
    out = [("lattice-roundtrip-all", {"lattice": L}) for L in distributive_lattices(k)]
    out += [("rejected", {"lattice": L})
            for L in poset_args([X for X in lattices_up_to(k) if not is_distributive(X)])]
    out += [("named-rejection", {"name": name}) for name in NAMED]
    out += [("double-dual-all", {"poset": P}) for P in poset_args(posets_up_to(min(DOUBLE_DUAL_POSETS, k)))]
    return out
