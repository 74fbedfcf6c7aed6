"""
order/lowersets.py
Lower sets and the free suplattice L(X): unit, pushforward, union.
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from core.budget import MAX_LOWER_SETS
from core.errors import NotAMorphismError, PosetAxiomError, SizeGuardError
from order.poset import FinPoset, MonotoneMap, bits, mask_of, popcount


@dataclass(frozen=True)
class LowerSet:
    base: FinPoset
    members: int

    def __contains__(self, x: int) -> bool:
        return bool(self.members >> x & 1)

    def __iter__(self):
        return bits(self.members)

    def __len__(self) -> int:
        return popcount(self.members)

    def __le__(self, other: "LowerSet") -> bool:
        return self.members & ~other.members == 0

    def __lt__(self, other: "LowerSet") -> bool:
        return self <= other and self.members != other.members

    def __or__(self, other: "LowerSet") -> "LowerSet":
        return LowerSet(self.base, self.members | other.members)

    def __and__(self, other: "LowerSet") -> "LowerSet":
        return LowerSet(self.base, self.members & other.members)

    def elements(self) -> list:
        return list(bits(self.members))

    def labels(self) -> list:
        return [self.base.label(i) for i in bits(self.members)]

    def __repr__(self) -> str:
        return "{" + ",".join(self.labels()) + "}"


def is_lower_set(X: FinPoset, mask: int) -> bool:
    return all(X.down[x] & ~mask == 0 for x in bits(mask))


def down_closure(X: FinPoset, subset) -> int:
    out = 0
    for x in bits(subset if isinstance(subset, int) else mask_of(subset)):
        out |= X.down[x]
    return out


def lower_set(X: FinPoset, subset) -> LowerSet:
    mask = subset if isinstance(subset, int) else mask_of(subset)
    if not is_lower_set(X, mask):
        bad = next(x for x in bits(mask) if X.down[x] & ~mask)
        missing = next(bits(X.down[bad] & ~mask))
        raise PosetAxiomError("downward closure", (missing, bad))
    return LowerSet(X, mask)


def principal_ideal(X: FinPoset, x: int) -> LowerSet:
    if not 0 <= x < X.n:
        raise IndexError(f"element {x} out of range for n={X.n}")
    return LowerSet(X, X.down[x])


@lru_cache(maxsize=512)
def enumerate_lower_sets(X: FinPoset, bound: int = None) -> tuple:
    """All lower-set masks of X, sorted by (size, mask). Raises SizeGuardError past `bound`."""
    limit = bound if bound is not None else MAX_LOWER_SETS
    strict = X.strict_down
    seen = {0}
    frontier = [0]
    while frontier:
        grown = []
        for m in frontier:
            for x in range(X.n):
                b = 1 << x
                if m & b or strict[x] & ~m:
                    continue
                m2 = m | b
                if m2 not in seen:
                    seen.add(m2)
                    grown.append(m2)
        if len(seen) > limit:
            raise SizeGuardError("lower_set_lattice", len(seen), limit)
        frontier = grown
    return tuple(sorted(seen, key=lambda m: (popcount(m), m)))


def inclusion_poset(masks, labels=None) -> FinPoset:
    arr = np.array(masks, dtype=np.uint64)
    if len(arr) == 0:
        return FinPoset(np.zeros((0, 0), dtype=bool), [])
    leq = (arr[:, None] & ~arr[None, :]) == 0
    return FinPoset(leq, labels)


def subset_label(X: FinPoset, mask: int) -> str:
    return "{" + ",".join(X.label(i) for i in bits(mask)) + "}"


class LowerSetLattice:
    """L(X): every lower set of X, ordered by inclusion, with the unit x -> down(x)."""

    def __init__(self, base: FinPoset, masks: tuple):
        self.base = base
        self.masks = masks
        self.index = {m: k for k, m in enumerate(masks)}

    def __len__(self) -> int:
        return len(self.masks)

    @cached_property
    def poset(self) -> FinPoset:
        return inclusion_poset(self.masks, [subset_label(self.base, m) for m in self.masks])

    def element(self, k: int) -> LowerSet:
        return LowerSet(self.base, self.masks[k])

    def elements(self) -> list:
        return [LowerSet(self.base, m) for m in self.masks]

    def position(self, phi) -> int:
        m = phi.members if isinstance(phi, LowerSet) else phi
        return self.index[m]

    def unit(self, x: int) -> int:
        """Position of down(x) in self.masks."""
        return self.index[self.base.down[x]]

    @cached_property
    def unit_map(self) -> MonotoneMap:
        return MonotoneMap(self.base, self.poset, [self.unit(x) for x in range(self.base.n)], check=False)

    def union(self, family: LowerSet) -> LowerSet:
        """Monad multiplication: a lower set of L(X) goes to the union of its members."""
        if family.base != self.poset:
            raise NotAMorphismError("family based on L(X)", [family.base.n, len(self)])
        out = 0
        for k in family:
            out |= self.masks[k]
        return LowerSet(self.base, out)

    def bottom(self) -> int:
        return self.index[0]

    def top(self) -> int:
        return self.index[self.base.full]


@lru_cache(maxsize=256)
def lower_set_lattice(X: FinPoset, bound: int = None) -> LowerSetLattice:
    return LowerSetLattice(X, enumerate_lower_sets(X, bound))


def pushforward(f: MonotoneMap, phi: LowerSet) -> LowerSet:
    """f_*(phi) = union of down(f(x)) over x in phi."""
    if phi.base != f.dom:
        raise NotAMorphismError("lower set based on the domain", [phi.base.n, f.dom.n])
    out = 0
    for x in phi:
        out |= f.cod.down[f.values[x]]
    return LowerSet(f.cod, out)


def pushforward_map(f: MonotoneMap) -> MonotoneMap:
    """L(f) : L(dom) -> L(cod) as a monotone map between the inclusion posets."""
    LX, LY = lower_set_lattice(f.dom), lower_set_lattice(f.cod)
    values = [LY.position(pushforward(f, LowerSet(f.dom, m))) for m in LX.masks]
    return MonotoneMap(LX.poset, LY.poset, values, check=False)
