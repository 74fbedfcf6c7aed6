"""
suites/urysohn.py
Urysohn separation: for y way below x a meet-preserving f into [0,1] with
y <= f+(1) <= x, on [0,1] itself and on every small continuous lattice.
"""

from fractions import Fraction

from duality.continuity import is_continuous, waydown
from duality.doctrines import PAIR_ORDER, doctrine_by_name
from duality.gelfand import DEFAULT_DEPTH, eta_separation, urysohn_separate
from order.poset import bits
from scale.rational import fmt
from suites.common import all_lattices, load, rng_for

NAME = "urysohn"
DESCRIPTION = "separating morphisms for way-below pairs on [0,1] and continuous lattices up to max_size"

INTERVAL_PAIRS = 50


def interval_pair(doctrine: str, y: str, x: str, depth: int = DEFAULT_DEPTH):
    f = urysohn_separate(None, doctrine_by_name(doctrine), y, x, depth)
    y, x = Fraction(y), Fraction(x)
    top = f.left_at(1)
    if not y <= top <= x:
        return "f+(1) is not between y and x", {"f+(1)": fmt(top)}
    if f(x) != 1:
        return "f does not reach 1 at x", {"f(x)": fmt(f(x))}
    return None


def lattice_pair(doctrine: str, lattice: dict, y: int, x: int, depth: int = DEFAULT_DEPTH):
    X = load(lattice)
    f = urysohn_separate(X, doctrine_by_name(doctrine), y, x, depth)
    top = f.left_at(1)
    if not (X.le(y, top) and X.le(top, x)):
        return "f+(1) is not between y and x", {"f+(1)": top}
    return None


def separation(doctrine: str, lattice: dict, x: int, y: int, depth: int = DEFAULT_DEPTH):
    eta_separation(load(lattice), doctrine_by_name(doctrine), x, y, depth)


CHECKS = {"interval-pair": interval_pair, "lattice-pair": lattice_pair, "separation": separation}


def items(params: dict) -> list:
    rng = rng_for(params, 4)
    steps = 1 << DEFAULT_DEPTH
    out = []
    for _ in range(INTERVAL_PAIRS):
        lo, hi = sorted(int(v) for v in rng.integers(0, steps + 1, size=2))
        if lo == hi:
            lo, hi = (lo, hi + 1) if hi < steps else (lo - 1, hi)
        out.append(("interval-pair", {"doctrine": "directed",
                                      "y": fmt(Fraction(lo, steps)), "x": fmt(Fraction(hi, steps))}))
    for lattice in all_lattices(params["max_size"]):
        X = load(lattice)
        for name in PAIR_ORDER:
            d = doctrine_by_name(name)
            if not is_continuous(X, d):
                continue
            W = waydown(X, d)
            for x in range(X.n):
                for y in bits(W.masks[x]):
                    out.append(("lattice-pair", {"doctrine": name, "lattice": lattice, "y": y, "x": x}))
                for y in range(X.n):
                    if not X.le(x, y):
                        out.append(("separation", {"doctrine": name, "lattice": lattice, "x": x, "y": y}))
    return out
