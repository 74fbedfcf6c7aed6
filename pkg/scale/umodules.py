"""
scale/umodules.py
Posets acted on by the monoid U of monotone surjections of [0,1].

Graded order a <=_r b, the quasimetric rho, Archimedean and stacking checks,
invariant filters, the kernel correspondence with morphisms into [0,1], and
the extension of the action from U to maps that fix 1 but not 0.

Every instance here has finitely many values per element (or is a PL map),
so each relation is decided exactly by one canonical test.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations
from typing import Any, Iterable, Optional

from core.budget import MAX_FAMILY, guard_size
from core.errors import (
    IncompatibleError,
    PreconditionError,
    UnsupportedInstance,
    VerificationError,
)
from core.report import Report, failed, passed, skipped
from duality.doctrines import DoctrinePair, pair_by_name, phi_masks
from order.poset import FinPoset, bits, join_all, require_lattice
from scale.interval import (
    IS_ONE,
    ONE,
    POSITIVE,
    ZERO,
    PLMap,
    canonical_r_iso,
    classify,
    compose,
    exceed_point,
    first_reaching,
    linf_rho,
    modulus,
    piece_iso,
    pointwise_meet,
    random_u,
    random_uhat,
    right_adjoint_pl,
    trunc_add,
)
from scale.rational import dot_minus, dot_plus, fmt, parse_rational, random_unit, unit

ALMOST_ONE = "1-"

# pool and grades for the exhaustive family-meet law
FAMILY_POOL = 4
FAMILY_GRADES = tuple(Fraction(k, 4) for k in range(5))


# ─────────────────────────────────────────────
# Instances
# ─────────────────────────────────────────────

class UModule(ABC):
    """
    A carrier with a monotone action of U.

    `apply` evaluates any monotone PL map pointwise, jumps included; `act`
    is its restriction to U. `meet` is pointwise min and always computable,
    while has_meets / has_top say whether the active doctrine pair makes
    them part of the structure.
    """

    name = "module"

    def __init__(self, pair: Optional[DoctrinePair] = None):
        self.pair = pair or pair_by_name("directed")

    @property
    def has_meets(self) -> bool:
        return bool(self.pair.psi.member(FinPoset.antichain(2)))

    @property
    def has_top(self) -> bool:
        return self.pair.psi.contains_empty

    # the extended action needs elements that may sit strictly above bottom everywhere
    uhat_ready = True

    @abstractmethod
    def leq(self, a, b) -> bool: ...

    @abstractmethod
    def apply(self, w: PLMap, a): ...

    def act(self, u: PLMap, a):
        return self.apply(u, a)

    @abstractmethod
    def meet(self, a, b): ...

    def top(self):
        return None

    def rho(self, a, b) -> Optional[Fraction]:
        """Closed form of rho, or None when the instance has none."""
        return None

    @abstractmethod
    def sample(self, rng): ...

    def indicator_elements(self) -> list:
        raise UnsupportedInstance(f"{self.name} has no finite set of 0/1 elements")

    def floor(self, a):
        return self.apply(IS_ONE, a)

    @abstractmethod
    def exceed(self, a, b) -> Optional[tuple]:
        """(coordinate, value of a, value of b) where a > b, or None."""

    @abstractmethod
    def to_json(self, a) -> Any: ...

    @abstractmethod
    def from_json(self, data) -> Any: ...

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name}, {self.pair.name})"


class IntervalModule(UModule):
    name = "interval"

    def leq(self, a, b) -> bool:
        return a <= b

    def apply(self, w, a):
        return w(a)

    def meet(self, a, b):
        return min(a, b)

    def top(self):
        return ONE

    def rho(self, a, b):
        return dot_minus(a, b)

    def sample(self, rng):
        return random_unit(rng, 16)

    def indicator_elements(self) -> list:
        return [ZERO, ONE]

    def exceed(self, a, b):
        return ("value", a, b) if a > b else None

    def to_json(self, a):
        return fmt(a)

    def from_json(self, data):
        return unit(data)


class FunctionModule(UModule):
    """
    Maps from a finite complete lattice X to [0,1] that preserve all meets
    and the Phi-joins of the pair, stored as value tables in element order.
    """

    def __init__(self, X: FinPoset, pair: Optional[DoctrinePair] = None):
        super().__init__(pair)
        require_lattice(X)
        guard_size("function_module", X.n)
        self.X = X
        self.name = f"functions/{X.n}"
        self._phis = [(m, join_all(X, m)) for m in phi_masks(self.pair.phi, X)]

    @property
    def uhat_ready(self) -> bool:
        return not self.pair.phi.contains_empty

    # ── element checks ──

    def violation(self, a) -> Optional[str]:
        X = self.X
        if len(a) != X.n:
            return "one value per element"
        if any(not 0 <= v <= 1 for v in a):
            return "values in [0,1]"
        if a[X.top] != 1:
            return "value 1 at the top"
        for i in range(X.n):
            for j in range(i, X.n):
                if a[X.meet(i, j)] != min(a[i], a[j]):
                    return f"meet of {X.label(i)} and {X.label(j)}"
        for m, j in self._phis:
            best = max((a[y] for y in bits(m)), default=ZERO)
            if a[j] != best:
                return f"join of {{{','.join(X.label(y) for y in bits(m))}}}"
        return None

    def element(self, values) -> tuple:
        a = tuple(unit(v) for v in values)
        problem = self.violation(a)
        if problem is not None:
            raise PreconditionError(f"not an element of {self.name}: {problem}", witness=[fmt(v) for v in a])
        return a

    def is_filter_indicator(self, F: int) -> bool:
        return all(not (F >> j & 1) or m & F for m, j in self._phis)

    # ── structure ──

    def leq(self, a, b) -> bool:
        return all(x <= y for x, y in zip(a, b))

    def apply(self, w, a):
        return tuple(w(v) for v in a)

    def meet(self, a, b):
        return tuple(min(x, y) for x, y in zip(a, b))

    def top(self):
        t = tuple(ONE for _ in range(self.X.n))
        return t if self.violation(t) is None else None

    def rho(self, a, b):
        return max((dot_minus(x, y) for x, y in zip(a, b)), default=ZERO)

    def indicator_elements(self) -> list:
        out = []
        for p in range(self.X.n):
            F = self.X.up[p]
            if self.is_filter_indicator(F):
                out.append(tuple(ONE if F >> x & 1 else ZERO for x in range(self.X.n)))
        return out

    def sample(self, rng):
        """Weighted chain of valid filters: 1 on the smallest, decreasing weights outward."""
        filters = [frozenset(x for x in range(len(e)) if e[x] == 1) for e in self.indicator_elements()]
        if not filters:
            raise UnsupportedInstance(f"{self.name} has no elements under {self.pair.name}")
        filters.sort(key=len)
        start = filters[int(rng.integers(0, len(filters)))]
        chain = [start]
        for F in filters:
            if F > chain[-1] and rng.integers(0, 2):
                chain.append(F)
        weights = sorted({int(v) for v in rng.integers(1, 16, size=len(chain) - 1)}, reverse=True)
        levels = [ONE] + [Fraction(w, 16) for w in weights]
        values = []
        for x in range(self.X.n):
            values.append(next((t for F, t in zip(chain, levels) if x in F), ZERO))
        return tuple(values)

    def exceed(self, a, b):
        for x, (p, q) in enumerate(zip(a, b)):
            if p > q:
                return self.X.label(x), p, q
        return None

    def to_json(self, a):
        return {self.X.label(x): fmt(v) for x, v in enumerate(a)}

    def from_json(self, data):
        if not isinstance(data, dict):
            raise ValueError("function element must map element labels to rationals")
        values = [None] * self.X.n
        for label, v in data.items():
            values[self.X.index(label)] = parse_rational(v)
        if any(v is None for v in values):
            raise ValueError("function element must give a value for every element")
        return self.element(values)


class PLModule(UModule):
    """Continuous PL maps fixing 1, acted on by postcomposition."""

    name = "pl"

    def leq(self, a, b) -> bool:
        return a <= b

    def apply(self, w, a):
        return compose(w, a)

    def meet(self, a, b):
        return pointwise_meet(a, b)

    def top(self):
        return PLMap.from_points([(0, 1), (1, 1)])

    def rho(self, a, b):
        return linf_rho(a, b)

    def sample(self, rng):
        return random_uhat(rng)

    def exceed(self, a, b):
        x = exceed_point(a, b)
        return None if x is None else (fmt(x), a(x), b(x))

    def to_json(self, a):
        from formats.codec import plmap_to_json
        return plmap_to_json(a)

    def from_json(self, data):
        from formats.codec import plmap_from_json
        a = plmap_from_json(data)
        if not classify(a).in_Uhat:
            raise PreconditionError("PL module elements are continuous and fix 1", witness=repr(a))
        return a


class InfinitesimalModule(UModule):
    """
    [0,1] with one extra point 1- just below 1. A map that reaches 1 before 1
    sends 1- to 1, a map that only reaches 1 at 1 keeps it. rho(1, 1-) is 0
    while 1 is not below 1-, so this module is not Archimedean.
    """

    name = "infinitesimal"

    @staticmethod
    def _key(a) -> tuple:
        if a == ALMOST_ONE:
            return ONE, 0
        return a, 1 if a == 1 else 0

    def leq(self, a, b) -> bool:
        return self._key(a) <= self._key(b)

    def apply(self, w, a):
        if a != ALMOST_ONE:
            return w(a)
        below = w.limit_left(ONE)
        if below < 1:
            return below
        reach = first_reaching(w, ONE)
        return ONE if reach is not None and reach < 1 else ALMOST_ONE

    def meet(self, a, b):
        return a if self.leq(a, b) else b

    def top(self):
        return ONE

    def sample(self, rng):
        if rng.integers(0, 4) == 0:
            return ALMOST_ONE
        return random_unit(rng, 16)

    def exceed(self, a, b):
        return None if self.leq(a, b) else ("value", a, b)

    def to_json(self, a):
        return a if a == ALMOST_ONE else fmt(a)

    def from_json(self, data):
        return ALMOST_ONE if data == ALMOST_ONE else unit(data)


MODULES = {
    "interval": IntervalModule,
    "pl": PLModule,
    "infinitesimal": InfinitesimalModule,
}


# ─────────────────────────────────────────────
# Graded order and distances
# ─────────────────────────────────────────────

@lru_cache(maxsize=512)
def graded_pair(r: Fraction) -> tuple:
    """(u, v) with u the upper iso of [r,1] and v = u after x -> x + r."""
    u = canonical_r_iso(r, "upper")
    return u, compose(u, trunc_add(r))


def le_r(A: UModule, a, b, r) -> bool:
    r = unit(r)
    if r == 0:
        return A.leq(a, b)
    if r == 1:
        return True
    u, v = graded_pair(r)
    return A.leq(A.act(u, a), A.act(v, b))


def rho(A: UModule, a, b) -> Fraction:
    out = A.rho(a, b)
    if out is None:
        raise UnsupportedInstance(f"{A.name} has no closed form for rho")
    return out


def dist(A: UModule, a, b) -> Fraction:
    return max(rho(A, a, b), rho(A, b, a))


def rho_bracket(A: UModule, a, b, depth: int = 8) -> tuple:
    """(lo, hi] around rho from bisection on le_r over the dyadic grid."""
    steps = 1 << depth
    lo, hi = 0, steps
    if le_r(A, a, b, 0):
        return ZERO, ZERO
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if le_r(A, a, b, Fraction(mid, steps)):
            hi = mid
        else:
            lo = mid
    return Fraction(lo, steps), Fraction(hi, steps)


def check_archimedean(A: UModule, pairs: Iterable, depth: int = 10) -> Report:
    report = Report(f"archimedean:{A.name}")
    for a, b in pairs:
        if A.leq(a, b):
            continue
        closed = A.rho(a, b)
        if closed is not None:
            zero = closed == 0
        else:
            zero = all(le_r(A, a, b, Fraction(1, 1 << k)) for k in range(1, depth + 1))
        if zero:
            report.add(failed(
                "archimedean",
                "a <=_r b for every r > 0 but not a <= b",
                {"a": A.to_json(a), "b": A.to_json(b)},
            ))
            return report
    report.add(passed("archimedean"))
    if type(A).rho is UModule.rho:
        report.notes.append(f"no closed form for rho; tested le_r down to 2^-{depth}")
    return report


# ─────────────────────────────────────────────
# Stacking
# ─────────────────────────────────────────────

@dataclass(frozen=True)
class Implication:
    hypothesis: bool
    conclusion: bool

    @property
    def holds(self) -> bool:
        return not self.hypothesis or self.conclusion

    def __bool__(self) -> bool:
        return self.holds


def check_partition(partition) -> tuple:
    points = tuple(unit(p) for p in partition)
    if len(points) < 2 or points[-1] != 1:
        raise ValueError("a partition runs from r to 1 with at least one piece")
    if any(p >= q for p, q in zip(points, points[1:])):
        raise ValueError("partition points must be strictly increasing")
    return points


def unstack_verify(A: UModule, a, b, partition) -> Implication:
    """Pieces of a below the matching pieces of b + r imply a <=_r b, with r the first point."""
    points = check_partition(partition)
    r = points[0]
    shift = trunc_add(r)
    hypothesis = True
    for lo, hi in zip(points, points[1:]):
        u = piece_iso(lo, hi)
        if not A.leq(A.act(u, a), A.act(compose(u, shift), b)):
            hypothesis = False
            break
    return Implication(hypothesis, le_r(A, a, b, r))


def compatibility_witness(A: UModule, a, b) -> Optional[dict]:
    """Where b is positive but a is below 1, with maps u', v' in U that have v'(b) > u'(a) there."""
    hit = A.exceed(A.apply(POSITIVE, b), A.apply(IS_ONE, a))
    if hit is None:
        return None
    coordinate = hit[0]
    va, vb = _value_at(A, a, coordinate), _value_at(A, b, coordinate)
    return {
        "at": coordinate,
        "a": fmt(va),
        "b": fmt(vb),
        "u": repr(piece_iso(va, 1)),
        "v": repr(piece_iso(0, vb)),
    }


def _value_at(A: UModule, a, coordinate) -> Fraction:
    if isinstance(A, FunctionModule):
        return a[A.X.index(coordinate)]
    if isinstance(A, PLModule):
        return a(parse_rational(coordinate))
    return a


def stack_glue(A: UModule, r, a, b):
    """The c with lower(c) = a and upper(c) = b for the canonical isos at r."""
    r = unit(r)
    witness = compatibility_witness(A, a, b)
    if witness is not None:
        raise IncompatibleError(f"b is positive where a is below 1 (at {witness['at']})", witness=witness)
    lower, upper = canonical_r_iso(r, "lower"), canonical_r_iso(r, "upper")
    c = A.meet(A.apply(right_adjoint_pl(lower), a), A.apply(right_adjoint_pl(upper), b))
    if A.act(lower, c) != a or A.act(upper, c) != b:
        raise VerificationError("glued element does not restrict to its pieces",
                                witness={"c": A.to_json(c), "r": fmt(r)})
    return c


def glue_pieces(A: UModule, partition, pieces: list):
    """The c with piece_iso(r_(i-1), r_i) acting on c giving pieces[i-1]."""
    points = check_partition(partition)
    if points[0] != 0:
        raise ValueError("gluing needs a partition starting at 0")
    if len(pieces) != len(points) - 1:
        raise ValueError(f"{len(points) - 1} pieces expected, got {len(pieces)}")
    c = _glue(A, points, list(pieces))
    for i, (lo, hi) in enumerate(zip(points, points[1:])):
        if A.act(piece_iso(lo, hi), c) != pieces[i]:
            raise VerificationError("glued element misses a piece", witness={"piece": i + 1})
    return c


def _glue(A: UModule, points: tuple, pieces: list):
    if len(pieces) == 1:
        return pieces[0]
    R = points[-2]
    head = _glue(A, tuple(p / R for p in points[:-1]), pieces[:-1])
    return stack_glue(A, R, head, pieces[-1])


def extend_to_uhat(A: UModule, w: PLMap, a):
    """Action of a continuous map fixing 1 (not necessarily 0)."""
    if not classify(w).in_Uhat:
        raise PreconditionError("w must be continuous, monotone and fix 1", witness=repr(w))
    r = w(ZERO)
    if r == 0:
        return A.act(w, a)
    if not A.uhat_ready:
        raise PreconditionError(f"{A.name} has no element above bottom everywhere")
    top = A.top()
    if top is None:
        raise PreconditionError(f"{A.name} has no top element")
    if r == 1:
        return top
    upper = canonical_r_iso(r, "upper")
    return stack_glue(A, r, top, A.act(compose(upper, w), a))


def check_uhat_meets(A: UModule, w: PLMap, pairs: Iterable) -> Report:
    report = Report(f"uhat-meets:{A.name}")
    for a, b in pairs:
        lhs = extend_to_uhat(A, w, A.meet(a, b))
        rhs = A.meet(extend_to_uhat(A, w, a), extend_to_uhat(A, w, b))
        if lhs != rhs:
            report.add(failed("uhat-meets", "extended action does not preserve a binary meet",
                              {"w": repr(w), "a": A.to_json(a), "b": A.to_json(b)}))
            return report
    report.add(passed("uhat-meets"))
    return report


# ─────────────────────────────────────────────
# Invariant filters and the kernel correspondence
# ─────────────────────────────────────────────

@dataclass(frozen=True)
class InvariantFilter:
    """Up-closure of finitely many 0/1 elements."""

    module: UModule
    minima: tuple
    requires_top: bool = False

    def contains(self, b) -> bool:
        return any(self.module.leq(e, b) for e in self.minima)

    def issubset(self, other: "InvariantFilter") -> bool:
        return all(other.contains(e) for e in self.minima)

    def least(self):
        if len(self.minima) == 1:
            return self.minima[0]
        if not self.minima or not self.module.has_meets:
            return None
        out = self.minima[0]
        for e in self.minima[1:]:
            out = self.module.meet(out, e)
        return out

    def to_json(self) -> dict:
        return {"minima": [self.module.to_json(e) for e in self.minima]}


def _minimal(A: UModule, elements: list) -> tuple:
    unique = []
    for e in elements:
        if e not in unique:
            unique.append(e)
    return tuple(e for e in unique if not any(f != e and A.leq(f, e) for f in unique))


def closed_invariant_filter(A: UModule, generators: Iterable) -> InvariantFilter:
    if isinstance(A, PLModule):
        raise UnsupportedInstance("floors of PL maps jump, so PL filters are not represented")
    floors = [A.floor(g) for g in generators]
    if not floors:
        top = A.top() if A.has_top else None
        return InvariantFilter(A, () if top is None else (top,), A.has_top)
    if A.has_meets:
        m = floors[0]
        for f in floors[1:]:
            m = A.meet(m, f)
        return InvariantFilter(A, (m,), A.has_top)
    return InvariantFilter(A, _minimal(A, floors), A.has_top)


@dataclass(frozen=True)
class KernelMorphism:
    """a -> 1 - rho(filter, a); sends exactly the filter to 1."""

    filter: InvariantFilter

    def __call__(self, a) -> Fraction:
        A = self.filter.module
        if not self.filter.minima:
            return ZERO
        return ONE - min(rho(A, e, a) for e in self.filter.minima)


def _upsets(A: UModule, elements: list) -> list:
    """Every up-closed subset of `elements` under A.leq, as tuples of indices."""
    n = len(elements)
    above = [frozenset(j for j in range(n) if A.leq(elements[i], elements[j])) for i in range(n)]
    out = []
    for size in range(n + 1):
        for chosen in combinations(range(n), size):
            s = frozenset(chosen)
            if all(above[i] <= s for i in s):
                out.append(s)
    return out


def morphisms_to_I(A: UModule) -> list:
    """[(filter, morphism)] for every closed invariant filter, round trip verified."""
    if isinstance(A, PLModule):
        raise UnsupportedInstance("PL filters are not finitely described")
    indicators = A.indicator_elements()
    top = A.top()
    out = []
    for s in _upsets(A, indicators):
        chosen = [indicators[i] for i in sorted(s)]
        if A.has_top and (top is None or top not in chosen):
            continue
        if A.has_meets and any(A.meet(p, q) not in chosen for p in chosen for q in chosen):
            continue
        filt = InvariantFilter(A, _minimal(A, chosen), A.has_top)
        m = KernelMorphism(filt)
        for e in indicators:
            if (m(e) == 1) != (e in chosen):
                raise VerificationError("kernel of the morphism is not its filter",
                                        witness={"element": A.to_json(e)})
        out.append((filt, m))
    return out


# ─────────────────────────────────────────────
# Laws of the graded order
# ─────────────────────────────────────────────

def _closed_rho(A: UModule, a, b) -> Fraction:
    out = A.rho(a, b)
    return out if out is not None else rho_bracket(A, a, b)[1]


def graded_order_laws(A: UModule, rng, count: int = 1000, max_family: int = MAX_FAMILY) -> Report:
    """The graded-order laws on seeded samples; each failure names its inputs."""
    report = Report(f"graded-order:{A.name}")
    js = A.to_json

    def fail(law, reason, **args):
        report.add(failed(law, reason, {k: (js(v) if k in ("a", "b", "c") else v) for k, v in args.items()}))

    # (a) monotone in r
    bad = None
    for _ in range(count):
        a, b = A.sample(rng), A.sample(rng)
        r, s = sorted((random_unit(rng), random_unit(rng)))
        if le_r(A, a, b, r) and not le_r(A, a, b, s):
            bad = (a, b, r, s)
            break
    if bad:
        fail("monotone-r", "a <=_r b but not a <=_s b for s >= r", a=bad[0], b=bad[1], r=fmt(bad[2]), s=fmt(bad[3]))
    else:
        report.add(passed("monotone-r"))

    # (b) <=_0 is <=
    bad = next(((a, b) for a, b in ((A.sample(rng), A.sample(rng)) for _ in range(count))
                if le_r(A, a, b, 0) != A.leq(a, b)), None)
    if bad:
        fail("zero-grade", "<=_0 differs from <=", a=bad[0], b=bad[1])
    else:
        report.add(passed("zero-grade"))

    # (c) a <=_r b <=_s c gives a <=_(r+s) c, at the tightest r and s
    bad = None
    for _ in range(count):
        a, b, c = A.sample(rng), A.sample(rng), A.sample(rng)
        r, s = _closed_rho(A, a, b), _closed_rho(A, b, c)
        if le_r(A, a, b, r) and le_r(A, b, c, s) and not le_r(A, a, c, dot_plus(r, s)):
            bad = (a, b, c, r, s)
            break
    if bad:
        fail("transitive", "grades do not add", a=bad[0], b=bad[1], c=bad[2], r=fmt(bad[3]), s=fmt(bad[4]))
    else:
        report.add(passed("transitive"))

    # (d) rho(a,a) = 0 and the triangle inequality
    bad = None
    for _ in range(count):
        a, b, c = A.sample(rng), A.sample(rng), A.sample(rng)
        if _closed_rho(A, a, a) != 0 or _closed_rho(A, a, c) > _closed_rho(A, a, b) + _closed_rho(A, b, c):
            bad = (a, b, c)
            break
    if bad:
        fail("triangle", "rho is not a pseudoquasimetric", a=bad[0], b=bad[1], c=bad[2])
    else:
        report.add(passed("triangle"))

    # (e) transport along the action, distance between actions, moduli
    bad = None
    for _ in range(count):
        a, b = A.sample(rng), A.sample(rng)
        u, v = random_u(rng), random_u(rng)
        r = _closed_rho(A, a, b)
        s = linf_rho(compose(u, trunc_add(r)), v)
        if not le_r(A, A.act(u, a), A.act(v, b), s):
            bad = ("transport", a, b, u, v, r)
            break
        if _closed_rho(A, A.act(u, a), A.act(v, a)) > linf_rho(u, v):
            bad = ("action-distance", a, b, u, v, r)
            break
        if _closed_rho(A, A.act(u, a), A.act(u, b)) > modulus(u)(r):
            bad = ("modulus", a, b, u, v, r)
            break
    if bad:
        fail("action", f"{bad[0]} law fails", a=bad[1], b=bad[2], u=repr(bad[3]), v=repr(bad[4]), r=fmt(bad[5]))
    else:
        report.add(passed("action"))

    # (f) transport along right adjoints
    bad = None
    for _ in range(count):
        a, b = A.sample(rng), A.sample(rng)
        u, v = random_u(rng), random_u(rng)
        r = _closed_rho(A, A.act(u, a), b)
        s = linf_rho(compose(right_adjoint_pl(u), trunc_add(r)), v)
        if not le_r(A, a, A.act(v, b), s):
            bad = (a, b, u, v, r, s)
            break
    if bad:
        fail("right-adjoint", "right adjoint transport fails",
             a=bad[0], b=bad[1], u=repr(bad[2]), v=repr(bad[3]), r=fmt(bad[4]), s=fmt(bad[5]))
    else:
        report.add(passed("right-adjoint"))

    # (g) grades against Psi-meets: sampled binary meets, then every small family of a pool
    if A.has_meets:
        bad = None
        for _ in range(count):
            a, b, c = A.sample(rng), A.sample(rng), A.sample(rng)
            r = random_unit(rng)
            if le_r(A, a, A.meet(b, c), r) != (le_r(A, a, b, r) and le_r(A, a, c, r)):
                bad = (a, b, c, r)
                break
        if bad:
            fail("meets", "a <=_r (b meet c) differs from both grades", a=bad[0], b=bad[1], c=bad[2], r=fmt(bad[3]))
        else:
            report.add(passed("meets"))
    else:
        report.add(skipped("meets", f"{A.pair.psi.name} asks for no binary meets"))

    pool = [A.sample(rng) for _ in range(FAMILY_POOL)]
    cases = ((a, family, r)
             for k in meet_family_sizes(A, max_family)
             for family in combinations(pool, k)
             for a in pool
             for r in FAMILY_GRADES)
    bad = next(((a, family, r) for a, family, r in cases
                if le_r(A, a, _meet_of(A, family), r) != all(le_r(A, a, b, r) for b in family)), None)
    if bad:
        report.add(failed("family-meets", "a <=_r (meet of F) differs from a <=_r b for all b in F",
                          {"a": js(bad[0]), "family": [js(b) for b in bad[1]], "r": fmt(bad[2])}))
    else:
        report.add(passed("family-meets"))
    return report


def meet_family_sizes(A: UModule, max_family: int) -> list:
    """Family sizes whose meets the active pair asks for; 0 stands for the top."""
    sizes = [0] if A.has_top and A.top() is not None else []
    return sizes + [k for k in range(1, max_family + 1) if A.pair.psi.member(FinPoset.antichain(k))]


def _meet_of(A: UModule, family):
    return reduce(A.meet, family) if family else A.top()
