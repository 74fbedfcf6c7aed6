"""
suites/saturation.py
Saturation laws for every named doctrine over all small posets.
"""

from core.budget import MAX_FAMILY
from duality.doctrines import DOCTRINES, check_saturation, doctrine_by_name
from order.enumerate import posets_up_to
from suites.common import outcome

NAME = "saturation"
DESCRIPTION = "unit, multiplication and cofinality laws of each doctrine on posets up to max_size"


def saturation(doctrine: str, max_size: int, max_family: int = MAX_FAMILY):
    return outcome(check_saturation(doctrine_by_name(doctrine), posets_up_to(max_size), max_family))


CHECKS = {"saturation": saturation}


def items(params: dict) -> list:
    return [("saturation", {"doctrine": name, "max_size": params["max_size"]}) for name in DOCTRINES]
