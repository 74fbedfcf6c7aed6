"""
suites/gelfand_roundtrip.py
Evaluation at finite scale: the morphisms from the function module of X to
[0,1] are the elements of X, in order; evaluation into the double dual
reflects the order of the sampled modules.
"""

from duality.doctrines import pair_by_name
from duality.gelfand import eta_roundtrip, iota_embedding_check
from suites.common import all_lattices, distributive_lattices, load, module_for, outcome, rng_for

NAME = "gelfand-roundtrip"
DESCRIPTION = "eta is an order-bijection on function modules; iota reflects the order within 2/n"


def eta(pair: str, lattice: dict, seed: int):
    return outcome(eta_roundtrip(load(lattice), pair_by_name(pair), rng_for({"seed": seed}, 5)))


def iota_embedding(module: str, seed: int, n: int = 8, lattice: dict = None, count: int = 12):
    A = module_for(module, lattice)
    rng = rng_for({"seed": seed}, 6)
    pairs = [(A.sample(rng), A.sample(rng)) for _ in range(count)]
    pairs += [(a, a) for a, _ in pairs[:3]]
    return outcome(iota_embedding_check(A, pairs, n))


CHECKS = {"eta": eta, "iota-embedding": iota_embedding}


def items(params: dict) -> list:
    seed, k = params["seed"], params["max_size"]
    out = [("eta", {"pair": "directed", "lattice": L, "seed": seed}) for L in all_lattices(k)]
    out += [("eta", {"pair": "all", "lattice": L, "seed": seed}) for L in distributive_lattices(k)]
    out.append(("iota-embedding", {"module": "interval", "seed": seed}))
    out.append(("iota-embedding", {"module": "infinitesimal", "seed": seed}))
    for L in all_lattices(min(k, 4), min_size=2):
        out.append(("iota-embedding", {"module": "functions", "seed": seed, "lattice": L}))
    return out
