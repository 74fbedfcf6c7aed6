"""
suites/common.py
Shared corpus helpers for the suite modules.
"""

from typing import Optional

import numpy as np

from core.report import Report
from formats.codec import poset_from_json, poset_to_json
from order.enumerate import lattices_up_to, posets_up_to
from order.poset import is_distributive


def outcome(report: Report) -> Optional[tuple]:
    """None when the report passed, else (reason, detail) from its first failure."""
    bad = report.first_failure
    if bad is None:
        return None
    return f"{report.name}/{bad.check}: {bad.failure_reason}", bad.witness


def poset_args(corpus: list) -> list:
    return [poset_to_json(X) for X in corpus]


def load(data: dict):
    return poset_from_json(data)


def all_posets(max_size: int) -> list:
    return poset_args(posets_up_to(max_size))


def all_lattices(max_size: int, min_size: int = 1) -> list:
    return poset_args([X for X in lattices_up_to(max_size) if X.n >= min_size])


def distributive_lattices(max_size: int) -> list:
    return poset_args([X for X in lattices_up_to(max_size) if X.n >= 1 and is_distributive(X)])


def rng_for(params: dict, salt: int = 0):
    return np.random.default_rng([int(params["seed"]), salt])


def module_for(module: str, lattice: Optional[dict] = None, pair: str = "directed"):
    """A U-module from suite arguments: a registered name, or 'functions' over a lattice."""
    from duality.doctrines import pair_by_name
    from scale.umodules import MODULES, FunctionModule

    if module == "functions":
        return FunctionModule(load(lattice), pair_by_name(pair))
    if module not in MODULES:
        raise ValueError(f"Module '{module}' not found. Available: functions, {', '.join(MODULES)}")
    return MODULES[module](pair_by_name(pair))
