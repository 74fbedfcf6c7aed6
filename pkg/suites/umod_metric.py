"""
suites/umod_metric.py
Graded order and quasimetric of U-modules: exact closed forms on [0,1],
the law battery on every instance, and the Archimedean property.
"""

from fractions import Fraction

from scale.rational import dot_minus, dot_plus, fmt
from scale.umodules import check_archimedean, dist, graded_order_laws, le_r, rho
from suites.common import all_lattices, module_for, outcome, rng_for

NAME = "umod-metric"
DESCRIPTION = "le_r, rho and dist on [0,1] against closed forms; graded-order laws; Archimedean check"

GRID = 64
LAW_SAMPLES = 1000


def interval_metric(a: str, grid: int = GRID):
    A = module_for("interval")
    a = Fraction(a)
    points = [Fraction(k, grid) for k in range(grid + 1)]
    for b in points:
        if rho(A, a, b) != dot_minus(a, b):
            return "rho differs from truncated subtraction", {"b": fmt(b)}
        if dist(A, a, b) != abs(a - b):
            return "dist differs from |a - b|", {"b": fmt(b)}
        for r in points:
            if le_r(A, a, b, r) != (a <= dot_plus(b, r)):
                return "le_r differs from a <= b + r", {"b": fmt(b), "r": fmt(r)}
    return None


def laws(module: str, seed: int, count: int = LAW_SAMPLES, lattice: dict = None):
    A = module_for(module, lattice)
    return outcome(graded_order_laws(A, rng_for({"seed": seed}, 1), count))


def archimedean(module: str, seed: int, count: int = 40, lattice: dict = None):
    A = module_for(module, lattice)
    rng = rng_for({"seed": seed}, 2)
    pairs = [(A.sample(rng), A.sample(rng)) for _ in range(count)]
    report = check_archimedean(A, pairs)
    if module == "infinitesimal":
        # 1 and the point just below it are at distance 0 without being ordered
        report = check_archimedean(A, pairs + [(Fraction(1), "1-")])
        if report.passed:
            return "the infinitesimal module passed as Archimedean", {}
        return None
    return outcome(report)


CHECKS = {"interval-metric": interval_metric, "laws": laws, "archimedean": archimedean}


def items(params: dict) -> list:
    seed = params["seed"]
    count = params.get("samples", LAW_SAMPLES)
    out = [("interval-metric", {"a": fmt(Fraction(k, GRID))}) for k in range(GRID + 1)]
    for module in ("interval", "pl"):
        out.append(("laws", {"module": module, "seed": seed, "count": count}))
    for lattice in all_lattices(params["max_size"]):
        out.append(("laws", {"module": "functions", "seed": seed, "count": count, "lattice": lattice}))
        out.append(("archimedean", {"module": "functions", "seed": seed, "lattice": lattice}))
    out.append(("archimedean", {"module": "interval", "seed": seed}))
    out.append(("archimedean", {"module": "infinitesimal", "seed": seed}))
    return out
