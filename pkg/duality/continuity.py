"""
duality/continuity.py
Way-below relation relative to a join doctrine, compact elements,
continuity and algebraicity tests, interpolation and morphism transposes.

x is way below y when x lies in every Phi-lower set whose join dominates y.
The relation is computed from that definition; the adjoint and
distributivity characterisations are separate procedures whose agreement
is checked, never assumed.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

import numpy as np

from core.budget import MAX_FAMILY, guard_size
from core.errors import NoAdjointError, PreconditionError, VerificationError
from core.report import Report, failed, passed, skipped
from duality.doctrines import Doctrine, phi_masks, phi_poset
from order.lowersets import LowerSet
from order.poset import (
    FinPoset,
    MonotoneMap,
    bits,
    join_all,
    left_adjoint,
    mask_of,
    meet_all,
    preserves_meets,
    require_lattice,
)
from scale.rational import unit


@dataclass(frozen=True)
class WayBelowRelation:
    base: FinPoset
    doctrine: Doctrine
    masks: tuple            # masks[x] = the way-below set of x, as a bitmask
    rel: np.ndarray         # rel[y, x] iff y is way below x

    def below(self, y: int, x: int) -> bool:
        return bool(self.masks[x] >> y & 1)

    @property
    def waydown(self) -> tuple:
        return tuple(LowerSet(self.base, m) for m in self.masks)

    @property
    def compacts(self) -> int:
        return mask_of(x for x in range(self.base.n) if self.below(x, x))


def _joins(X: FinPoset, masks) -> list:
    return [join_all(X, m) for m in masks]


def waydown(X: FinPoset, d: Doctrine) -> WayBelowRelation:
    require_lattice(X)
    guard_size("waydown", X.n)
    phis = phi_masks(d, X)
    joins = _joins(X, phis)
    masks = []
    for x in range(X.n):
        m = X.full
        for phi, j in zip(phis, joins):
            if X.le(x, j):
                m &= phi
        masks.append(m)
    rel = np.zeros((X.n, X.n), dtype=bool)
    for x, m in enumerate(masks):
        for y in bits(m):
            rel[y, x] = True
    rel.flags.writeable = False
    return WayBelowRelation(X, d, tuple(masks), rel)


def compact_elements(X: FinPoset, d: Doctrine) -> int:
    return waydown(X, d).compacts


# ─────────────────────────────────────────────
# The four continuity criteria
# ─────────────────────────────────────────────

def _criterion_definition(X, d, W, phis) -> object:
    inside = set(phis)
    for x in range(X.n):
        wd = W.masks[x]
        if wd not in inside:
            return failed("way-below-generates", "the way-below set is not a Phi-lower set", {"element": x})
        if join_all(X, wd) != x:
            return failed("way-below-generates", "the way-below set does not join to the element", {"element": x})
    return passed("way-below-generates")


def _criterion_approximation(X, d, W, phis, joins) -> object:
    for x in range(X.n):
        if not any(phi & ~W.masks[x] == 0 and X.le(x, j) for phi, j in zip(phis, joins)):
            return failed(
                "approximation",
                "no Phi-lower set inside the way-below set reaches the element",
                {"element": x},
            )
    return passed("approximation")


def _criterion_left_adjoint(X, d, W, phis, joins) -> object:
    inside = set(phis)
    for x in range(X.n):
        wd = W.masks[x]
        if wd not in inside:
            return failed("left-adjoint", "the way-below set is not a Phi-lower set", {"element": x})
        for phi, j in zip(phis, joins):
            if (wd & ~phi == 0) != X.le(x, j):
                return failed(
                    "left-adjoint",
                    "way-below set is not left adjoint to the join map",
                    {"element": x, "lower_set": list(bits(phi))},
                )
    return passed("left-adjoint")


def _criterion_join_preserves_meets(X, d, phis, joins) -> object:
    _, PX = phi_poset(d, X)
    join_map = MonotoneMap(PX, X, joins, check=False)
    witness = preserves_meets(join_map)
    if witness is not None:
        return failed(
            "join-preserves-meets",
            "the join map on Phi(X) does not preserve meets",
            {"lower_sets": [list(bits(phis[k])) for k in witness]},
        )
    return passed("join-preserves-meets")


def meet_distributivity_witness(X: FinPoset, d: Doctrine, max_family: int = MAX_FAMILY) -> Optional[list]:
    """A family of Phi-lower sets on which meets fail to distribute over joins, or None."""
    require_lattice(X)
    guard_size("distributivity", X.n)
    phis = phi_masks(d, X)
    joins = _joins(X, phis)
    for size in range(2, max_family + 1):
        for family in combinations(range(len(phis)), size):
            meet_of_joins = meet_all(X, mask_of(joins[k] for k in family))
            common = X.full
            for k in family:
                common &= phis[k]
            if meet_of_joins != join_all(X, common):
                return [list(bits(phis[k])) for k in family]
    return None


def check_meet_distributivity(X: FinPoset, d: Doctrine) -> bool:
    return meet_distributivity_witness(X, d) is None


def continuity_criteria(X: FinPoset, d: Doctrine) -> Report:
    W = waydown(X, d)
    phis = phi_masks(d, X)
    joins = _joins(X, phis)
    report = Report(f"continuity:{d.name}")
    report.add(_criterion_definition(X, d, W, phis))
    report.add(_criterion_approximation(X, d, W, phis, joins))
    report.add(_criterion_left_adjoint(X, d, W, phis, joins))
    report.add(_criterion_join_preserves_meets(X, d, phis, joins))
    family = meet_distributivity_witness(X, d)
    if family is None:
        report.add(passed("meet-distributivity"))
    else:
        report.add(failed("meet-distributivity", "meets do not distribute over Phi-joins", {"family": family}))
    return report


def is_continuous(X: FinPoset, d: Doctrine) -> bool:
    report = continuity_criteria(X, d)
    outcomes = {v.check: v.ok for v in report.verdicts}
    if len(set(outcomes.values())) > 1:
        raise VerificationError(f"continuity criteria disagree on {X!r}", witness=outcomes)
    return report.passed


def is_algebraic(X: FinPoset, d: Doctrine) -> bool:
    """Every element is the Phi-join of the compact elements below it; then X is Phi(compacts)."""
    W = waydown(X, d)
    K = W.compacts
    for x in range(X.n):
        below = K & X.down[x]
        if not d.holds(X, below) or join_all(X, below) != x:
            return False
    _verify_compact_generation(X, d, K)
    return True


def _verify_compact_generation(X: FinPoset, d: Doctrine, K: int):
    order = list(bits(K))
    position = {x: i for i, x in enumerate(order)}
    XK = X.induced(K)
    images = []
    for x in range(X.n):
        images.append(mask_of(position[k] for k in bits(K & X.down[x])))
    expected = set(phi_masks(d, XK))
    if set(images) != expected or len(set(images)) != X.n:
        raise VerificationError("compacts do not generate X freely", witness=[list(bits(m)) for m in images])
    for x in range(X.n):
        for y in range(X.n):
            if X.le(x, y) != (images[x] & ~images[y] == 0):
                raise VerificationError("compact generation is not an order-isomorphism", witness=[x, y])


# ─────────────────────────────────────────────
# Laws of the way-below relation
# ─────────────────────────────────────────────

def check_interpolation(X: FinPoset, d: Doctrine) -> bool:
    if not is_continuous(X, d):
        raise PreconditionError(f"{X!r} is not {d.name}-continuous")
    W = waydown(X, d)
    for x in range(X.n):
        for z in bits(W.masks[x]):
            if not any(W.below(z, y) for y in bits(W.masks[x])):
                return False
    return True


def check_way_props(W: WayBelowRelation) -> Report:
    X = W.base
    report = Report(f"way-below:{W.doctrine.name}")

    bad = next(((y, x) for x in range(X.n) for y in bits(W.masks[x]) if not X.le(y, x)), None)
    report.add(passed("below-implies-le") if bad is None
               else failed("below-implies-le", "way below but not below", {"pair": list(bad)}))

    bad = None
    for x in range(X.n):
        for y in bits(W.masks[x]):
            # x' <= y << x <= x'' implies x' << x''
            for lower in bits(X.down[y]):
                for upper in bits(X.up[x]):
                    if not W.below(lower, upper):
                        bad = (lower, y, x, upper)
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    report.add(passed("monotone") if bad is None
               else failed("monotone", "way-below is not monotone", {"chain": list(bad)}))

    if X.n:
        bottom_compact = W.below(X.bottom, X.bottom)
        empty_in_phi = W.doctrine.holds(X, 0)
        if bottom_compact == (not empty_in_phi):
            report.add(passed("bottom"))
        else:
            report.add(failed("bottom", "bottom compactness disagrees with the empty lower set",
                              {"bottom_compact": bottom_compact}))
    else:
        report.add(skipped("bottom", "empty poset"))
    return report


def check_algebraic_way_below(X: FinPoset, d: Doctrine) -> Report:
    report = Report(f"algebraic-way-below:{d.name}")
    if not is_algebraic(X, d):
        report.add(skipped("compact-factorisation", "not algebraic"))
        return report
    W = waydown(X, d)
    K = W.compacts
    for x in range(X.n):
        for y in range(X.n):
            through = bool(K & X.up[x] & X.down[y])
            if W.below(x, y) != through:
                report.add(failed("compact-factorisation", "way-below does not factor through a compact",
                                  {"pair": [x, y]}))
                return report
    report.add(passed("compact-factorisation"))
    return report


# ─────────────────────────────────────────────
# Transposes
# ─────────────────────────────────────────────

@dataclass(frozen=True)
class Transpose:
    left: MonotoneMap
    preserves_phi_joins: bool
    preserves_way_below: bool
    preserves_joins: bool


def preserves_phi_joins(f: MonotoneMap, d: Doctrine) -> Optional[list]:
    """A Phi-lower set whose join f fails to preserve, or None."""
    X, Y = f.dom, f.cod
    for phi in phi_masks(d, X):
        if f(join_all(X, phi)) != join_all(Y, f.image(phi)):
            return list(bits(phi))
    return None


def transpose_morphism(f: MonotoneMap, d: Doctrine) -> Transpose:
    X, Y = f.dom, f.cod
    left = left_adjoint(f)
    if left is None:
        raise NoAdjointError("f does not preserve meets, so it has no left adjoint", witness=list(f.values))
    for side, Z in (("domain", X), ("codomain", Y)):
        if not is_continuous(Z, d):
            raise PreconditionError(f"the {side} is not {d.name}-continuous",
                                    witness={"side": side, "leq": Z.leq.tolist()})

    keeps_joins = preserves_phi_joins(f, d) is None
    WX, WY = waydown(X, d), waydown(Y, d)
    keeps_way_below = all(
        WX.below(left(y), left(x)) for x in range(Y.n) for y in bits(WY.masks[x])
    )
    all_joins = (Y.n == 0 or left(Y.bottom) == X.bottom) and all(
        left(Y.join(a, b)) == X.join(left(a), left(b)) for a in range(Y.n) for b in range(a + 1, Y.n)
    )
    if keeps_joins != keeps_way_below:
        raise VerificationError(
            "Phi-join preservation and way-below preservation disagree",
            witness={"phi_joins": keeps_joins, "way_below": keeps_way_below},
        )
    return Transpose(left, keeps_joins, keeps_way_below, all_joins)


# ─────────────────────────────────────────────
# The unit interval
# ─────────────────────────────────────────────

def interval_way_below(r, s, d: Doctrine) -> bool:
    r, s = unit(r), unit(s)
    zero = Fraction(0)
    if d.contains_omega:
        return r < s or (r == s == zero and not d.contains_empty)
    # without infinite directed joins every positive point is compact
    return (zero < r <= s) or (r == zero and (s > zero or not d.contains_empty))


def interval_compact(r, d: Doctrine) -> bool:
    return interval_way_below(r, r, d)


