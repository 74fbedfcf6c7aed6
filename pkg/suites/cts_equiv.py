"""
suites/cts_equiv.py
The continuity criteria agree on every small lattice for every built-in doctrine.
"""

from core.report import skipped
from duality.continuity import (
    check_algebraic_way_below,
    check_way_props,
    continuity_criteria,
    waydown,
)
from duality.doctrines import PAIR_ORDER, check_doctrine_continuity, doctrine_by_name
from order.enumerate import posets_up_to
from suites.common import all_lattices, load, outcome, poset_args

NAME = "cts-equiv"
DESCRIPTION = "way-below, approximation, adjoint and distributivity criteria agree on lattices up to max_size"

# lower-set lattices past the waydown budget come back skipped
DOCTRINE_POSETS = 5


def criteria(doctrine: str, lattice: dict):
    X, d = load(lattice), doctrine_by_name(doctrine)
    report = continuity_criteria(X, d)
    outcomes = {v.check: v.ok for v in report.verdicts}
    if len(set(outcomes.values())) > 1:
        return "continuity criteria disagree", outcomes
    return None


def way_below_laws(doctrine: str, lattice: dict):
    return outcome(check_way_props(waydown(load(lattice), doctrine_by_name(doctrine))))


def algebraic(doctrine: str, lattice: dict):
    report = check_algebraic_way_below(load(lattice), doctrine_by_name(doctrine))
    if all(v.skipped for v in report.verdicts):
        return skipped("algebraic-way-below", "not algebraic")
    return outcome(report)


def doctrine_continuity(doctrine: str, poset: dict):
    if not check_doctrine_continuity(doctrine_by_name(doctrine), load(poset)):
        return "lower-set lattice is not continuous", {"doctrine": doctrine}
    return None


CHECKS = {
    "criteria": criteria,
    "way-below-laws": way_below_laws,
    "algebraic-way-below": algebraic,
    "doctrine-continuity": doctrine_continuity,
}


def items(params: dict) -> list:
    out = []
    for lattice in all_lattices(params["max_size"]):
        for d in PAIR_ORDER:
            out.append(("criteria", {"doctrine": d, "lattice": lattice}))
            out.append(("way-below-laws", {"doctrine": d, "lattice": lattice}))
            out.append(("algebraic-way-below", {"doctrine": d, "lattice": lattice}))
    for poset in poset_args(posets_up_to(min(DOCTRINE_POSETS, params["max_size"]))):
        for d in PAIR_ORDER:
            out.append(("doctrine-continuity", {"doctrine": d, "poset": poset}))
    return out
