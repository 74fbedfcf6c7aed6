"""
suites/sound4.py
Soundness of the four built-in doctrine pairs, exhaustively on small posets.
"""

from duality.doctrines import PAIR_ORDER, check_soundness_finite, check_submonad, pair_by_name
from suites.common import all_posets, load, outcome

NAME = "sound4"
DESCRIPTION = "Phi-compact lower sets are the Psi-lower sets, and Phi(X) is the Psi-ideals, for all four pairs"


def soundness(pair: str, poset: dict):
    return outcome(check_soundness_finite(pair_by_name(pair), load(poset)))


def submonad(pair: str, poset: dict):
    return outcome(check_submonad(pair_by_name(pair).phi, load(poset)))


CHECKS = {"soundness": soundness, "submonad": submonad}


def items(params: dict) -> list:
    out = []
    for poset in all_posets(params["max_size"]):
        for pair in PAIR_ORDER:
            out.append(("soundness", {"pair": pair, "poset": poset}))
            out.append(("submonad", {"pair": pair, "poset": poset}))
    return out
