"""
suites/interpolation.py
Interpolation of the way-below relation on continuous lattices.
"""

from core.report import skipped
from duality.continuity import check_interpolation, is_continuous
from duality.doctrines import PAIR_ORDER, doctrine_by_name
from suites.common import all_lattices, load

NAME = "interpolation"
DESCRIPTION = "y << x gives some z with y << z << x, on continuous lattices up to max_size"


def interpolation(doctrine: str, lattice: dict):
    X, d = load(lattice), doctrine_by_name(doctrine)
    if not is_continuous(X, d):
        return skipped("interpolation", f"not {d.name}-continuous")
    if not check_interpolation(X, d):
        return "way-below does not interpolate", {"doctrine": doctrine}
    return None


CHECKS = {"interpolation": interpolation}


def items(params: dict) -> list:
    return [
        ("interpolation", {"doctrine": d, "lattice": lattice})
        for lattice in all_lattices(params["max_size"])
        for d in PAIR_ORDER
    ]
