"""
duality/gelfand.py
Morphisms into [0,1]: Urysohn separation along dyadic interpolation chains,
evaluation maps in both directions, orbit filters and the approximate inverse.

Chains are built by a deterministic interpolation rule, so a chain on a
finite lattice is self-similar. The value f(z) of the separating morphism is
the limit of the chain and is solved exactly once a (lower, upper) state repeats.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from core.errors import PreconditionError, UnsupportedInstance, VerificationError
from core.log import log
from core.report import Report, failed, passed
from duality.continuity import interval_way_below, is_continuous, waydown
from duality.doctrines import Doctrine, DoctrinePair, phi_masks
from order.poset import FinPoset, bits, join_all, popcount
from scale.interval import ONE, ZERO, PLMap, canonical_r_iso, constant, piece_iso, threshold
from scale.rational import dot_minus, dot_plus, dyadic_grid, fmt, uniform_grid, unit
from scale.umodules import (
    FunctionModule,
    InvariantFilter,
    PLModule,
    UModule,
    closed_invariant_filter,
    glue_pieces,
    le_r,
    morphisms_to_I,
)

DEFAULT_DEPTH = 6


@dataclass(frozen=True)
class ScaleMorphism:
    """A morphism X -> [0,1] with its left adjoint tabulated on a dyadic grid."""

    domain: Optional[FinPoset]          # None for [0,1] itself
    table: Optional[tuple] = None       # f(z) per element of a finite domain
    plmap: Optional[PLMap] = None       # f on [0,1]
    left: tuple = ()                    # (r, f+(r)) on the grid
    chain: tuple = ()                   # (q, g(q)) for the reported interpolation chain
    depth: int = DEFAULT_DEPTH

    def __call__(self, z):
        if self.domain is None:
            return self.plmap(unit(z))
        return self.table[z]

    def left_at(self, r):
        r = unit(r)
        for q, v in self.left:
            if q == r:
                return v
        raise KeyError(f"{fmt(r)} is not on the grid of depth {self.depth}")

    def to_json(self) -> dict:
        def show(v):
            return fmt(v) if self.domain is None else self.domain.label(v)

        out = {
            "depth": self.depth,
            "left_adjoint": {fmt(r): show(v) for r, v in self.left},
            "chain": {fmt(q): show(v) for q, v in self.chain},
        }
        if self.domain is None:
            out["values"] = repr(self.plmap)
        else:
            out["values"] = {self.domain.label(z): fmt(v) for z, v in enumerate(self.table)}
        return out


# ─────────────────────────────────────────────
# Interpolation
# ─────────────────────────────────────────────

def _least(X: FinPoset, candidates) -> Optional[int]:
    return min(candidates, key=lambda z: (popcount(X.down[z]), z), default=None)


def _interpolant(X: FinPoset, W, lo: int, hi: int, d: Doctrine) -> int:
    z = _least(X, [z for z in range(X.n) if W.below(lo, z) and W.below(z, hi)])
    if z is None:
        if not is_continuous(X, d):
            raise PreconditionError(f"{X!r} is not {d.name}-continuous, no interpolant between {lo} and {hi}")
        raise VerificationError("continuous lattice without an interpolant", witness=[lo, hi])
    return z


def interpolate_chain(X: Optional[FinPoset], d: Doctrine, y, x, depth: int) -> dict:
    """g on the dyadic grid of `depth` with g(0) = y, g(1) = x and r < s giving g(r) way below g(s)."""
    grid = dyadic_grid(depth)
    if X is None:
        y, x = unit(y), unit(x)
        if not interval_way_below(y, x, d):
            raise PreconditionError(f"{fmt(y)} is not way below {fmt(x)} in [0,1]")
        return {q: y + (x - y) * q for q in grid}

    W = waydown(X, d)
    if not W.below(y, x):
        raise PreconditionError(f"{X.label(y)} is not way below {X.label(x)}")
    g = {ZERO: y, ONE: x}
    for level in range(1, depth + 1):
        step = Fraction(1, 1 << level)
        for k in range(1, 1 << level, 2):
            g[k * step] = _interpolant(X, W, g[(k - 1) * step], g[(k + 1) * step], d)
    return {q: g[q] for q in grid}


# ─────────────────────────────────────────────
# Urysohn separation
# ─────────────────────────────────────────────

def _chain_value(X: FinPoset, W, d: Doctrine, y: int, x: int, z: int, memo: dict) -> Fraction:
    """inf{q dyadic : g(q) not below z} for the infinite chain from y to x."""
    seen = {}
    offset, scale = ZERO, ONE
    lo, hi = y, x
    while True:
        if not X.le(lo, z):
            return offset
        state = (lo, hi)
        if state in seen:
            off0, scale0 = seen[state]
            h = (offset - off0) / (scale0 - scale)
            return off0 + scale0 * h
        seen[state] = (offset, scale)
        if state not in memo:
            memo[state] = _interpolant(X, W, lo, hi, d)
        mid = memo[state]
        scale /= 2
        if X.le(mid, z):
            offset += scale
            lo = mid
        else:
            hi = mid


def _check_meets_and_joins(X: FinPoset, d: Doctrine, f: tuple):
    if X.n and f[X.top] != 1:
        raise VerificationError("separating map does not send the top to 1", witness=[fmt(v) for v in f])
    for i in range(X.n):
        for j in range(i + 1, X.n):
            if f[X.meet(i, j)] != min(f[i], f[j]):
                raise VerificationError("separating map does not preserve a meet", witness=[i, j])
    for m in phi_masks(d, X):
        if f[join_all(X, m)] != max((f[k] for k in bits(m)), default=ZERO):
            raise VerificationError("separating map does not preserve a Phi-join", witness=list(bits(m)))


def urysohn_separate(X: Optional[FinPoset], d: Doctrine, y, x, depth: int = DEFAULT_DEPTH) -> ScaleMorphism:
    chain = interpolate_chain(X, d, y, x, depth)
    grid = dyadic_grid(depth)

    if X is None:
        y, x = unit(y), unit(x)
        f = piece_iso(y, x) if y < x else constant(1)
        left = tuple((r, ZERO if r == 0 else y + (x - y) * r) for r in grid)
        top = left[-1][1]
        if not y <= top <= x:
            raise VerificationError("f+(1) is not between y and x", witness=[fmt(y), fmt(top), fmt(x)])
        return ScaleMorphism(None, plmap=f, left=left, chain=tuple(chain.items()), depth=depth)

    W = waydown(X, d)
    memo = {}
    table = tuple(_chain_value(X, W, d, y, x, z, memo) for z in range(X.n))
    _check_meets_and_joins(X, d, table)

    left = []
    for r in grid:
        reach = [z for z in range(X.n) if r <= table[z]]
        low = X.least(sum(1 << z for z in reach))
        if low is None:
            raise VerificationError("no least element reaching a grid value", witness=fmt(r))
        left.append((r, low))
    for r, low in left:
        for z in range(X.n):
            if X.le(low, z) != (r <= table[z]):
                raise VerificationError("grid left adjoint is not adjoint", witness=[fmt(r), z])
    top = left[-1][1]
    if not (X.le(y, top) and X.le(top, x)):
        raise VerificationError("f+(1) is not between y and x", witness=[y, top, x])
    log("GELFAND", f"urysohn {X.label(y)} << {X.label(x)}: {[fmt(v) for v in table]}")
    return ScaleMorphism(X, table=table, left=tuple(left), chain=tuple(chain.items()), depth=depth)


def eta_separation(X: Optional[FinPoset], d: Doctrine, x, y, depth: int = DEFAULT_DEPTH) -> ScaleMorphism:
    """A morphism with f(x) > f(y), for x not below y."""
    if X is None:
        x, y = unit(x), unit(y)
        if x <= y:
            raise PreconditionError(f"{fmt(x)} is below {fmt(y)}")
        z = (x + y) / 2
        f = urysohn_separate(None, d, z, x, depth)
    else:
        if X.le(x, y):
            raise PreconditionError(f"{X.label(x)} is below {X.label(y)}")
        W = waydown(X, d)
        z = _least(X, [z for z in bits(W.masks[x]) if not X.le(z, y)])
        if z is None:
            raise PreconditionError(f"every element way below {X.label(x)} is below {X.label(y)}")
        f = urysohn_separate(X, d, z, x, depth)
    if not f(x) > f(y):
        raise VerificationError("separating morphism does not separate", witness=[fmt(f(x)), fmt(f(y))])
    return f


# ─────────────────────────────────────────────
# Orbit filters and the evaluation into the double dual
# ─────────────────────────────────────────────

def orbit_Ur(A: UModule, a, r, b) -> bool:
    """Is b in the closed invariant filter of {u(a) | u in U, u(r) = 1}?"""
    r = unit(r)
    if r == 0:
        return False
    return A.leq(A.apply(threshold(r), a), b)


def iota_tilde(A: UModule, a, t) -> InvariantFilter:
    t = unit(t)
    if t == 0:
        return closed_invariant_filter(A, [])
    return closed_invariant_filter(A, [A.apply(threshold(t), a)])


def iota(A: UModule, a) -> Callable:
    return lambda t: iota_tilde(A, a, t)


def iota_embedding_check(A: UModule, pairs, n: int = 8, depth: int = DEFAULT_DEPTH) -> Report:
    """
    Filters of a containing those of b at every i/n force a <=_(2/n) b, and
    a not below b always shows up as some grade where they are not contained.
    """
    report = Report(f"iota-embedding:{A.name}")
    grid = dyadic_grid(depth)[1:]
    for a, b in pairs:
        args = {"a": A.to_json(a), "b": A.to_json(b)}
        contained = all(
            iota_tilde(A, b, Fraction(i, n)).issubset(iota_tilde(A, a, Fraction(i, n))) for i in range(n + 1)
        )
        if contained and not le_r(A, a, b, Fraction(2, n)):
            report.add(failed("two-over-n", "contained filters without a <=_(2/n) b", {**args, "n": n}))
            return report
        if A.leq(a, b) and not contained:
            report.add(failed("monotone", "a below b but the filters of a miss those of b", args))
            return report
        hit = A.exceed(a, b)
        if hit is not None:
            candidates = list(grid) + ([hit[1]] if isinstance(hit[1], Fraction) else [])
            if all(iota_tilde(A, b, r).issubset(iota_tilde(A, a, r)) for r in candidates):
                report.add(failed("order-reflecting", "no grade tells a and b apart", args))
                return report
    report.add(passed("order-reflecting"))
    return report


# ─────────────────────────────────────────────
# Approximate inverse
# ─────────────────────────────────────────────

def approximate_inverse(A: UModule, f: Callable, n: int):
    """
    An element a whose filters sit within 1/n of f on both sides, so that
    dist(iota(a), f) <= 2/n. f maps each grade t to an InvariantFilter.
    """
    if isinstance(A, PLModule):
        raise UnsupportedInstance("PL filters are not finitely described")
    if n < 2:
        raise ValueError("approximate inverse needs n >= 2")
    grid = uniform_grid(n)
    pieces = []
    for i in range(1, n + 1):
        current, previous = f(grid[i]), f(grid[i - 1])
        a_i = current.least()
        if a_i is None:
            raise UnsupportedInstance(f"filter at {fmt(grid[i])} has no least element")
        r_i = next((r for r in grid[:-1] if previous.issubset(iota_tilde(A, a_i, r))), None)
        if r_i is None:
            raise VerificationError("no grade below 1 covers the previous filter", witness={"i": i})
        pieces.append(a_i if r_i == 0 else A.act(canonical_r_iso(r_i, "upper"), a_i))
    a = glue_pieces(A, grid, pieces)

    step = Fraction(1, n)
    for t in grid:
        if not iota_tilde(A, a, t).issubset(f(dot_plus(t, step))):
            raise VerificationError("filter of a exceeds f one step up", witness={"t": fmt(t)})
        if not f(dot_minus(t, step)).issubset(iota_tilde(A, a, dot_plus(t, step))):
            raise VerificationError("f one step down exceeds the filter of a", witness={"t": fmt(t)})
    log("GELFAND", f"approximate inverse at n={n}: {A.to_json(a)}")
    return a


# ─────────────────────────────────────────────
# Evaluation at finite scale
# ─────────────────────────────────────────────

def eta_roundtrip(X: FinPoset, pair: DoctrinePair, rng=None, samples: int = 8) -> Report:
    """Morphisms from the function module to [0,1] correspond to the elements of X, in order."""
    A = FunctionModule(X, pair)
    report = Report(f"eta:{pair.name}")
    morphisms = morphisms_to_I(A)
    indicators = A.indicator_elements()
    kernels = {}
    for k, (_, m) in enumerate(morphisms):
        kernels[frozenset(i for i, e in enumerate(indicators) if m(e) == 1)] = k

    morphism_of = {}
    for x in range(X.n):
        evaluated = frozenset(i for i, e in enumerate(indicators) if e[x] == 1)
        if evaluated not in kernels:
            report.add(failed("bijection", "evaluation at an element is not a listed morphism", {"element": x}))
            return report
        morphism_of[x] = kernels[evaluated]
    if len(morphisms) != X.n or len(set(morphism_of.values())) != X.n:
        report.add(failed("bijection", "morphisms and elements differ in number",
                          {"elements": X.n, "morphisms": len(morphisms)}))
        return report
    report.add(passed("bijection"))

    pool = list(indicators)
    if rng is not None:
        pool += [A.sample(rng) for _ in range(samples)]
    for x in range(X.n):
        m = morphisms[morphism_of[x]][1]
        for a in pool:
            if m(a) != a[x]:
                report.add(failed("evaluation", "morphism differs from evaluation",
                                  {"element": x, "a": A.to_json(a)}))
                return report
    report.add(passed("evaluation"))

    for x in range(X.n):
        for y in range(X.n):
            mx, my = morphisms[morphism_of[x]][0], morphisms[morphism_of[y]][0]
            # larger element, larger morphism, larger kernel
            if X.le(x, y) != mx.issubset(my):
                report.add(failed("order", "kernel inclusion differs from the order of X", {"pair": [x, y]}))
                return report
    report.add(passed("order"))
    return report
