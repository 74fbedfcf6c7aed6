"""
scale/interval.py
Monotone piecewise-linear self-maps of [0,1] with exact rational breakpoints.

A PLMap may jump: the value at a breakpoint is stored apart from both
one-sided limits, so right adjoints of surjections are ordinary values.
Every map is kept in normal form, which makes == exact equality.
"""

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional

from core.errors import PreconditionError, VerificationError
from scale.rational import fmt, unit

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class PLMap:
    xs: tuple        # 0 = xs[0] < ... < xs[k] = 1
    vals: tuple      # value at xs[i]
    rights: tuple    # rights[j]: limit from the right at xs[j]   (j < k)
    lefts: tuple     # lefts[j]:  limit from the left at xs[j+1]  (j < k)

    # ── construction ──

    @classmethod
    def build(cls, xs, vals, rights, lefts) -> "PLMap":
        xs = [Fraction(x) for x in xs]
        vals = [Fraction(v) for v in vals]
        rights = [Fraction(v) for v in rights]
        lefts = [Fraction(v) for v in lefts]
        k = len(xs) - 1
        if k < 1 or xs[0] != 0 or xs[-1] != 1:
            raise ValueError("breakpoints must start at 0 and end at 1")
        if any(a >= b for a, b in zip(xs, xs[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if len(vals) != k + 1 or len(rights) != k or len(lefts) != k:
            raise ValueError("one value per breakpoint and two limits per segment")
        for v in (*vals, *rights, *lefts):
            if not 0 <= v <= 1:
                raise ValueError(f"value {fmt(v)} outside [0,1]")
        for i in range(k + 1):
            if i > 0 and lefts[i - 1] > vals[i]:
                raise ValueError(f"decreasing jump at x={fmt(xs[i])}")
            if i < k and vals[i] > rights[i]:
                raise ValueError(f"decreasing jump at x={fmt(xs[i])}")
        for j in range(k):
            if rights[j] > lefts[j]:
                raise ValueError(f"decreasing segment on [{fmt(xs[j])},{fmt(xs[j + 1])}]")
        return cls._normalized(xs, vals, rights, lefts)

    @classmethod
    def _normalized(cls, xs, vals, rights, lefts) -> "PLMap":
        xs, vals, rights, lefts = list(xs), list(vals), list(rights), list(lefts)
        i = 1
        while i < len(xs) - 1:
            continuous = lefts[i - 1] == vals[i] == rights[i]
            before = (lefts[i - 1] - rights[i - 1]) / (xs[i] - xs[i - 1])
            after = (lefts[i] - rights[i]) / (xs[i + 1] - xs[i])
            if continuous and before == after:
                del xs[i], vals[i], rights[i], lefts[i - 1]
            else:
                i += 1
        return cls(tuple(xs), tuple(vals), tuple(rights), tuple(lefts))

    @classmethod
    def from_points(cls, points: Iterable) -> "PLMap":
        """Continuous map through (x, y) points; x must run from 0 to 1."""
        table = {}
        for x, y in points:
            x, y = Fraction(x), Fraction(y)
            if table.setdefault(x, y) != y:
                raise ValueError(f"two values at x={fmt(x)}")
        xs = sorted(table)
        ys = [table[x] for x in xs]
        return cls.build(xs, ys, ys[:-1], ys[1:])

    # ── evaluation ──

    @property
    def k(self) -> int:
        return len(self.xs) - 1

    def _locate(self, x: Fraction) -> tuple:
        i = bisect_left(self.xs, x)
        if i <= self.k and self.xs[i] == x:
            return True, i
        return False, i - 1

    def _segment(self, j: int, x: Fraction) -> Fraction:
        x0, x1 = self.xs[j], self.xs[j + 1]
        y0, y1 = self.rights[j], self.lefts[j]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def __call__(self, x) -> Fraction:
        x = unit(x) if not isinstance(x, Fraction) else x
        at, i = self._locate(x)
        return self.vals[i] if at else self._segment(i, x)

    def limit_right(self, x: Fraction) -> Fraction:
        at, i = self._locate(x)
        if at:
            return self.rights[i] if i < self.k else self.vals[i]
        return self._segment(i, x)

    def limit_left(self, x: Fraction) -> Fraction:
        at, i = self._locate(x)
        if at:
            return self.lefts[i - 1] if i > 0 else self.vals[0]
        return self._segment(i, x)

    @cached_property
    def is_continuous(self) -> bool:
        return all(
            (i == 0 or self.lefts[i - 1] == self.vals[i]) and (i == self.k or self.vals[i] == self.rights[i])
            for i in range(self.k + 1)
        )

    def dual(self) -> "PLMap":
        """x -> 1 - u(1 - x)."""
        return PLMap(
            tuple(ONE - x for x in reversed(self.xs)),
            tuple(ONE - v for v in reversed(self.vals)),
            tuple(ONE - v for v in reversed(self.lefts)),
            tuple(ONE - v for v in reversed(self.rights)),
        )

    def __le__(self, other: "PLMap") -> bool:
        return exceed_point(self, other) is None

    def __repr__(self) -> str:
        parts = []
        for i, x in enumerate(self.xs):
            if i > 0 and self.lefts[i - 1] != self.vals[i]:
                parts.append(f"{fmt(x)}-:{fmt(self.lefts[i - 1])}")
            parts.append(f"{fmt(x)}:{fmt(self.vals[i])}")
            if i < self.k and self.rights[i] != self.vals[i]:
                parts.append(f"{fmt(x)}+:{fmt(self.rights[i])}")
        return "PLMap(" + ", ".join(parts) + ")"


# ─────────────────────────────────────────────
# Named maps
# ─────────────────────────────────────────────

def identity() -> PLMap:
    return PLMap.from_points([(0, 0), (1, 1)])


def constant(c) -> PLMap:
    c = unit(c)
    return PLMap.from_points([(0, c), (1, c)])


def trunc_add(r) -> PLMap:
    """x -> min(x + r, 1)."""
    r = unit(r)
    if r == 1:
        return constant(1)
    return PLMap.from_points([(0, r), (1 - r, 1), (1, 1)])


def trunc_sub(r) -> PLMap:
    """x -> max(x - r, 0)."""
    r = unit(r)
    if r == 1:
        return constant(0)
    return PLMap.from_points([(0, 0), (r, 0), (1, 1 - r)])


def piece_iso(lo, hi) -> PLMap:
    """Linear iso [lo,hi] onto [0,1], constant 0 below and 1 above."""
    lo, hi = unit(lo), unit(hi)
    if lo >= hi:
        raise ValueError(f"empty piece [{fmt(lo)},{fmt(hi)}]")
    pts = {(ZERO, ZERO), (lo, ZERO), (hi, ONE), (ONE, ONE)}
    return PLMap.from_points(pts)


def canonical_r_iso(r, side: str) -> PLMap:
    r = unit(r)
    if r in (0, 1):
        raise ValueError(f"r must lie strictly between 0 and 1, got {fmt(r)}")
    if side == "lower":
        return piece_iso(0, r)
    if side == "upper":
        return piece_iso(r, 1)
    raise ValueError(f"side must be 'lower' or 'upper', got {side!r}")


def threshold(r) -> PLMap:
    """Indicator of [r,1]: 0 below r, 1 from r on."""
    r = unit(r)
    if r == 0:
        return constant(1)
    if r == 1:
        return PLMap((ZERO, ONE), (ZERO, ONE), (ZERO,), (ZERO,))
    return PLMap((ZERO, r, ONE), (ZERO, ONE, ONE), (ZERO, ONE), (ZERO, ONE))


# indicator of (0,1]
POSITIVE = PLMap((ZERO, ONE), (ZERO, ONE), (ONE,), (ONE,))
# indicator of {1}
IS_ONE = threshold(1)


# ─────────────────────────────────────────────
# Composition and classification
# ─────────────────────────────────────────────

def evaluate(u: PLMap, x) -> Fraction:
    return u(unit(x))


def compose(u: PLMap, v: PLMap) -> PLMap:
    """u after v."""
    points = set(v.xs)
    for j in range(v.k):
        lo, hi = v.rights[j], v.lefts[j]
        if lo < hi:
            x0, x1 = v.xs[j], v.xs[j + 1]
            for y in u.xs:
                if lo < y < hi:
                    points.add(x0 + (y - lo) * (x1 - x0) / (hi - lo))
    xs = sorted(points)
    vals = [u(v(p)) for p in xs]
    rights, lefts = [], []
    for p, q in zip(xs, xs[1:]):
        vr, vl = v.limit_right(p), v.limit_left(q)
        if vr == vl:
            c = u(vr)
            rights.append(c)
            lefts.append(c)
        else:
            rights.append(u.limit_right(vr))
            lefts.append(u.limit_left(vl))
    return PLMap._normalized(xs, vals, rights, lefts)


@dataclass(frozen=True)
class Classification:
    in_U: bool
    in_Uhat: bool
    continuous: bool
    surjective: bool

    def to_json(self) -> dict:
        return {
            "in_U": self.in_U,
            "in_Uhat": self.in_Uhat,
            "continuous": self.continuous,
            "surjective": self.surjective,
        }


def _image_covers_unit(u: PLMap) -> bool:
    # image pieces in x order: (lo, lo_closed, hi, hi_closed); monotone, so already sorted
    pieces = []
    for i in range(u.k + 1):
        pieces.append((u.vals[i], True, u.vals[i], True))
        if i < u.k:
            lo, hi = u.rights[i], u.lefts[i]
            if lo < hi:
                pieces.append((lo, False, hi, False))
            else:
                pieces.append((lo, True, lo, True))
    lo, closed, _, _ = pieces[0]
    if lo != 0 or not closed:
        return False
    reach, reach_closed = ZERO, True
    for lo, lo_closed, hi, hi_closed in pieces:
        if lo > reach or (lo == reach and not (lo_closed or reach_closed)):
            return False
        if hi > reach:
            reach, reach_closed = hi, hi_closed
        elif hi == reach:
            reach_closed = reach_closed or hi_closed
    return reach == 1 and reach_closed


def classify(u: PLMap) -> Classification:
    continuous = u.is_continuous
    surjective = _image_covers_unit(u)
    fixes_ends = u.vals[0] == 0 and u.vals[-1] == 1
    # monotone self-maps of [0,1]: onto iff continuous with both ends fixed
    if surjective != (continuous and fixes_ends):
        raise VerificationError("image coverage disagrees with continuity", witness=repr(u))
    return Classification(
        in_U=continuous and fixes_ends and surjective,
        in_Uhat=continuous and u.vals[-1] == 1,
        continuous=continuous,
        surjective=surjective,
    )


# ─────────────────────────────────────────────
# Adjoints
# ─────────────────────────────────────────────

def right_adjoint_pl(u: PLMap) -> PLMap:
    """u^x(y) = max{x | u(x) <= y}, for u in U."""
    if not classify(u).in_U:
        raise PreconditionError("right adjoint needs a monotone surjection of [0,1]", witness=repr(u))
    first, last = {}, {}
    for x, y in zip(u.xs, u.vals):
        first.setdefault(y, x)
        last[y] = x
    ys = sorted(first)
    vals = [last[y] for y in ys]
    rights = [last[y] for y in ys[:-1]]
    lefts = [first[y] for y in ys[1:]]
    return PLMap._normalized(ys, vals, rights, lefts)


def left_adjoint_pl(u: PLMap) -> PLMap:
    """u+(y) = min{x | y <= u(x)}, through the order dual."""
    return right_adjoint_pl(u.dual()).dual()


# ─────────────────────────────────────────────
# Pointwise lattice operations and the sup-quasimetric
# ─────────────────────────────────────────────

def _pointwise(u: PLMap, v: PLMap, pick) -> PLMap:
    points = set(u.xs) | set(v.xs)
    base = sorted(points)
    for p, q in zip(base, base[1:]):
        d0 = u.limit_right(p) - v.limit_right(p)
        d1 = u.limit_left(q) - v.limit_left(q)
        if d0 * d1 < 0:
            points.add(p + (q - p) * d0 / (d0 - d1))
    xs = sorted(points)
    vals = [pick(u(x), v(x)) for x in xs]
    rights = [pick(u.limit_right(p), v.limit_right(p)) for p in xs[:-1]]
    lefts = [pick(u.limit_left(q), v.limit_left(q)) for q in xs[1:]]
    return PLMap._normalized(xs, vals, rights, lefts)


def pointwise_meet(u: PLMap, v: PLMap) -> PLMap:
    return _pointwise(u, v, min)


def pointwise_join(u: PLMap, v: PLMap) -> PLMap:
    return _pointwise(u, v, max)


def linf_rho(u: PLMap, v: PLMap) -> Fraction:
    """sup over x of u(x) - v(x), truncated at 0."""
    best = ZERO
    for p in sorted(set(u.xs) | set(v.xs)):
        best = max(
            best,
            u(p) - v(p),
            u.limit_right(p) - v.limit_right(p),
            u.limit_left(p) - v.limit_left(p),
        )
    return best


def exceed_point(u: PLMap, v: PLMap) -> Optional[Fraction]:
    """Some x with u(x) > v(x), or None when u <= v pointwise."""
    base = sorted(set(u.xs) | set(v.xs))
    for p in base:
        if u(p) > v(p):
            return p
    for p, q in zip(base, base[1:]):
        d0 = u.limit_right(p) - v.limit_right(p)
        d1 = u.limit_left(q) - v.limit_left(q)
        if d0 > 0 and d1 > 0:
            return (p + q) / 2
        if d0 > 0:
            t = p + (q - p) * d0 / (d0 - d1)
            return (p + t) / 2
        if d1 > 0:
            t = p + (q - p) * d0 / (d0 - d1)
            return (t + q) / 2
    return None


def lipschitz_bound(u: PLMap) -> Fraction:
    if not u.is_continuous:
        raise PreconditionError("a jump has no Lipschitz bound", witness=repr(u))
    return max((u.lefts[j] - u.rights[j]) / (u.xs[j + 1] - u.xs[j]) for j in range(u.k))


def modulus(u: PLMap) -> PLMap:
    """t -> min(L t, 1) for the Lipschitz bound L of u."""
    L = lipschitz_bound(u)
    if L <= 1:
        return PLMap.from_points([(0, 0), (1, L)])
    return PLMap.from_points([(0, 0), (1 / L, 1), (1, 1)])


def first_reaching(u: PLMap, r) -> Optional[Fraction]:
    """inf{x | u(x) >= r}, or None when u never reaches r."""
    r = Fraction(r)
    for i in range(u.k + 1):
        if u.vals[i] >= r:
            return u.xs[i]
        if i < u.k:
            lo, hi = u.rights[i], u.lefts[i]
            if lo >= r:
                return u.xs[i]
            if hi >= r:
                x0, x1 = u.xs[i], u.xs[i + 1]
                return x0 + (r - lo) * (x1 - x0) / (hi - lo)
    return None


# ─────────────────────────────────────────────
# Seeded samples
# ─────────────────────────────────────────────

def _random_points(rng, pieces: int, denominator: int, start: Fraction) -> list:
    interior = sorted(set(int(v) for v in rng.integers(1, denominator, size=max(0, pieces - 1))))
    lo = int(start * denominator)
    ys = sorted(int(v) for v in rng.integers(lo, denominator + 1, size=len(interior)))
    pts = [(ZERO, start)]
    pts += [(Fraction(x, denominator), Fraction(y, denominator)) for x, y in zip(interior, ys)]
    pts.append((ONE, ONE))
    return pts


def random_u(rng, pieces: int = 3, denominator: int = 16) -> PLMap:
    return PLMap.from_points(_random_points(rng, pieces, denominator, ZERO))


def random_uhat(rng, pieces: int = 3, denominator: int = 16) -> PLMap:
    start = Fraction(int(rng.integers(0, denominator + 1)), denominator)
    return PLMap.from_points(_random_points(rng, pieces, denominator, start))
