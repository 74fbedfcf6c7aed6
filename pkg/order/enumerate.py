"""
order/enumerate.py
Posets and lattices up to isomorphism, in canonical form.

Canonical form: refine (down-count, up-count) invariants over the cover graph,
then take the lexicographically least order matrix among the orderings that
keep invariant classes in place.
"""

from functools import lru_cache
from itertools import permutations, product
from typing import Iterator, Optional

import numpy as np

from core.budget import guard_size
from core.log import log
from order.lowersets import enumerate_lower_sets
from order.poset import FinPoset, is_complete_lattice

REFINE_ROUNDS = 2


def _invariant_ranks(X: FinPoset) -> list:
    down = X.leq.sum(axis=0)
    up = X.leq.sum(axis=1)
    keys = [(int(down[i]), int(up[i])) for i in range(X.n)]
    lower_covers = [[] for _ in range(X.n)]
    upper_covers = [[] for _ in range(X.n)]
    for i, j in X.hasse_edges:
        upper_covers[i].append(j)
        lower_covers[j].append(i)

    ranks = _rank(keys)
    for _ in range(REFINE_ROUNDS):
        keys = [
            (
                ranks[i],
                tuple(sorted(ranks[j] for j in lower_covers[i])),
                tuple(sorted(ranks[j] for j in upper_covers[i])),
            )
            for i in range(X.n)
        ]
        ranks = _rank(keys)
    return ranks


def _rank(keys: list) -> list:
    order = {k: r for r, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def canonical_with_perm(X: FinPoset) -> tuple:
    """(canonical poset, perm) where canonical element k is X's element perm[k]."""
    if X.n == 0:
        return FinPoset(X.leq, X.labels), ()
    ranks = _invariant_ranks(X)
    blocks = {}
    for i in range(X.n):
        blocks.setdefault(ranks[i], []).append(i)
    ordered = [blocks[r] for r in sorted(blocks)]

    best_key, best_perm = None, None
    for choice in product(*(permutations(b) for b in ordered)):
        perm = [i for block in choice for i in block]
        key = np.packbits(X.leq[np.ix_(perm, perm)]).tobytes()
        if best_key is None or key < best_key:
            best_key, best_perm = key, perm
    return X.relabel(best_perm), tuple(best_perm)


def canonical_form(X: FinPoset) -> FinPoset:
    return canonical_with_perm(X)[0]


def find_isomorphism(X: FinPoset, Y: FinPoset) -> Optional[tuple]:
    """iso[x] = image of x in Y, or None."""
    if X.n != Y.n:
        return None
    cx, px = canonical_with_perm(X)
    cy, py = canonical_with_perm(Y)
    if cx != cy:
        return None
    iso = [0] * X.n
    for k in range(X.n):
        iso[px[k]] = py[k]
    return tuple(iso)


def is_isomorphic(X: FinPoset, Y: FinPoset) -> bool:
    return find_isomorphism(X, Y) is not None


def _add_maximal(P: FinPoset, below: int) -> FinPoset:
    n = P.n
    leq = np.zeros((n + 1, n + 1), dtype=bool)
    leq[:n, :n] = P.leq
    leq[n, n] = True
    for i in range(n):
        leq[i, n] = bool(below >> i & 1)
    return FinPoset(leq)


@lru_cache(maxsize=None)
def _posets(n: int) -> tuple:
    if n == 0:
        return (FinPoset(np.zeros((0, 0), dtype=bool)),)
    found = {}
    for P in _posets(n - 1):
        # every poset has a maximal element whose strict down-set is a lower set of the rest
        for below in enumerate_lower_sets(P):
            C = canonical_form(_add_maximal(P, below))
            found.setdefault(C._key, C)
    log("ENUM", f"{len(found)} posets with {n} elements")
    return tuple(found[k] for k in sorted(found))


def enumerate_posets(n: int) -> Iterator[FinPoset]:
    guard_size("enumerate_posets", n)
    yield from _posets(n)


def posets_up_to(k: int) -> list:
    return [P for n in range(k + 1) for P in enumerate_posets(n)]


def _bounded(P: FinPoset) -> FinPoset:
    n = P.n + 2
    leq = np.zeros((n, n), dtype=bool)
    leq[0, :] = True
    leq[:, n - 1] = True
    leq[1:n - 1, 1:n - 1] = P.leq
    return FinPoset(leq)


@lru_cache(maxsize=None)
def _lattices(n: int) -> tuple:
    if n <= 0:
        return ()
    if n == 1:
        return (FinPoset.chain(1),)
    found = {}
    for P in _posets(n - 2):
        L = _bounded(P)
        if is_complete_lattice(L):
            C = canonical_form(L)
            found.setdefault(C._key, C)
    log("ENUM", f"{len(found)} lattices with {n} elements")
    return tuple(found[k] for k in sorted(found))


def enumerate_lattices(n: int) -> Iterator[FinPoset]:
    guard_size("enumerate_lattices", n)
    yield from _lattices(n)


def lattices_up_to(k: int) -> list:
    return [L for n in range(1, k + 1) for L in enumerate_lattices(n)]
