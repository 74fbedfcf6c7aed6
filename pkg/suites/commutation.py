"""
suites/commutation.py
Psi-meets commute with Phi-joins in the two-element lattice.
"""

from duality.doctrines import PAIR_ORDER, check_commutation, flags_consistent, pair_by_name
from order.enumerate import posets_up_to
from suites.common import outcome

NAME = "commutation"
DESCRIPTION = "commutation of Psi-meets with Phi-joins in 2 over all posets up to max_size"


def commutation(pair: str, max_size: int):
    p = pair_by_name(pair)
    if not flags_consistent(p):
        return "exactly one doctrine of the pair should carry infinite joins", {"pair": pair}
    return outcome(check_commutation(p, posets_up_to(max_size)))


CHECKS = {"commutation": commutation}


def items(params: dict) -> list:
    return [("commutation", {"pair": name, "max_size": params["max_size"]}) for name in PAIR_ORDER]
