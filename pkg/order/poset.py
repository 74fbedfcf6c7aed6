"""
order/poset.py
Finite posets as read-only numpy boolean order matrices, monotone maps, bounds and adjoints.

Elements are range(n). Subsets are passed around as int bitmasks (bit i set iff i is in the subset).
"""

from functools import cached_property
from numbers import Integral
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from core.errors import NotALatticeError, NotAMorphismError, PosetAxiomError


# ─────────────────────────────────────────────
# Bitmask helpers
# ─────────────────────────────────────────────

def bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def as_mask(subset) -> int:
    if isinstance(subset, Integral):
        return int(subset)
    if hasattr(subset, "members"):
        return subset.members
    return mask_of(subset)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


# ─────────────────────────────────────────────
# FinPoset
# ─────────────────────────────────────────────

class FinPoset:
    """
    Immutable finite partial order. leq[i, j] is True iff i <= j.

    Construct through validate_poset (checks the axioms) or the named
    constructors below; the bare constructor trusts its input.
    Equality and hashing look at the order matrix only, labels are cosmetic.
    """

    def __init__(self, leq: np.ndarray, labels: Optional[Sequence[str]] = None):
        leq = np.array(leq, dtype=bool)
        if leq.size == 0:
            leq = np.zeros((0, 0), dtype=bool)
        leq.flags.writeable = False
        self.leq = leq
        self.n = leq.shape[0]
        self.labels = tuple(str(l) for l in labels) if labels is not None else None

    # ── identity ──

    @cached_property
    def _key(self) -> tuple:
        return (self.n, np.packbits(self.leq).tobytes())

    def __eq__(self, other) -> bool:
        return isinstance(other, FinPoset) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        covers = ", ".join(f"{self.label(i)}<{self.label(j)}" for i, j in self.hasse_edges)
        return f"FinPoset(n={self.n}; {covers})"

    def __len__(self) -> int:
        return self.n

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)

    def index(self, label) -> int:
        if isinstance(label, (int, np.integer)):
            if not 0 <= label < self.n:
                raise IndexError(f"element {label} out of range for n={self.n}")
            return int(label)
        if self.labels and label in self.labels:
            return self.labels.index(label)
        if str(label).isdigit():
            return self.index(int(label))
        raise IndexError(f"no element labelled {label!r}")

    def with_labels(self, labels: Sequence[str]) -> "FinPoset":
        return FinPoset(self.leq, labels)

    # ── order data ──

    def le(self, i: int, j: int) -> bool:
        return bool(self.leq[i, j])

    @cached_property
    def down(self) -> tuple:
        """down[x] = mask of {y | y <= x}."""
        return tuple(mask_of(np.flatnonzero(self.leq[:, j])) for j in range(self.n))

    @cached_property
    def up(self) -> tuple:
        return tuple(mask_of(np.flatnonzero(self.leq[i, :])) for i in range(self.n))

    @cached_property
    def strict_down(self) -> tuple:
        return tuple(m & ~(1 << x) for x, m in enumerate(self.down))

    @cached_property
    def full(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def cover(self) -> np.ndarray:
        """cover[i, j] iff j covers i."""
        lt = self.leq.copy()
        lt[np.diag_indices_from(lt)] = False
        between = np.matmul(lt, lt) if self.n else lt
        out = lt & ~between
        out.flags.writeable = False
        return out

    @cached_property
    def hasse_edges(self) -> tuple:
        return tuple((int(i), int(j)) for i, j in zip(*np.nonzero(self.cover)))

    @cached_property
    def linear_extension(self) -> tuple:
        """Elements sorted so that i <= j implies i comes first."""
        counts = self.leq.sum(axis=0)
        return tuple(sorted(range(self.n), key=lambda i: (int(counts[i]), i)))

    # ── derived posets ──

    def induced(self, subset) -> "FinPoset":
        idx = list(bits(as_mask(subset)))
        sub = self.leq[np.ix_(idx, idx)] if idx else np.zeros((0, 0), dtype=bool)
        labels = [self.label(i) for i in idx]
        return FinPoset(sub, labels)

    def opposite(self) -> "FinPoset":
        return FinPoset(self.leq.T, self.labels)

    def relabel(self, perm: Sequence[int]) -> "FinPoset":
        """New poset whose element k is old element perm[k]."""
        p = list(perm)
        sub = self.leq[np.ix_(p, p)] if p else self.leq
        return FinPoset(sub, [self.label(i) for i in p] if self.labels else None)

    # ── bounds ──

    def lower_bounds(self, subset) -> int:
        m = self.full
        for s in bits(as_mask(subset)):
            m &= self.down[s]
        return m

    def upper_bounds(self, subset) -> int:
        m = self.full
        for s in bits(as_mask(subset)):
            m &= self.up[s]
        return m

    def greatest(self, subset) -> Optional[int]:
        m = as_mask(subset)
        for x in bits(m):
            if m & ~self.down[x] == 0:
                return x
        return None

    def least(self, subset) -> Optional[int]:
        m = as_mask(subset)
        for x in bits(m):
            if m & ~self.up[x] == 0:
                return x
        return None

    @cached_property
    def bottom(self) -> Optional[int]:
        return self.least(self.full)

    @cached_property
    def top(self) -> Optional[int]:
        return self.greatest(self.full)

    def maximal(self, subset) -> list:
        m = as_mask(subset)
        return [x for x in bits(m) if m & self.up[x] == 1 << x]

    def minimal(self, subset) -> list:
        m = as_mask(subset)
        return [x for x in bits(m) if m & self.down[x] == 1 << x]

    # ── lattice tables ──

    @cached_property
    def join_table(self) -> tuple:
        return tuple(
            tuple(self.least(self.up[i] & self.up[j]) for j in range(self.n))
            for i in range(self.n)
        )

    @cached_property
    def meet_table(self) -> tuple:
        return tuple(
            tuple(self.greatest(self.down[i] & self.down[j]) for j in range(self.n))
            for i in range(self.n)
        )

    def join(self, i: int, j: int) -> int:
        out = self.join_table[i][j]
        if out is None:
            raise NotALatticeError(f"{self.label(i)} and {self.label(j)} have no join", witness=[i, j])
        return out

    def meet(self, i: int, j: int) -> int:
        out = self.meet_table[i][j]
        if out is None:
            raise NotALatticeError(f"{self.label(i)} and {self.label(j)} have no meet", witness=[i, j])
        return out

    # ── named constructors ──

    @classmethod
    def chain(cls, n: int) -> "FinPoset":
        return cls(np.triu(np.ones((n, n), dtype=bool)))

    @classmethod
    def antichain(cls, n: int, labels=None) -> "FinPoset":
        return cls(np.eye(n, dtype=bool), labels)

    @classmethod
    def from_covers(cls, n: int, covers: Iterable[tuple], labels=None) -> "FinPoset":
        """Reflexive-transitive closure of the given (lower, upper) pairs."""
        rel = np.eye(n, dtype=bool)
        for i, j in covers:
            rel[i, j] = True
        for _ in range(max(1, n.bit_length())):
            rel = rel | np.matmul(rel, rel)
        return validate_poset(rel, labels)

    @classmethod
    def product(cls, a: "FinPoset", b: "FinPoset") -> "FinPoset":
        leq = np.kron(a.leq, b.leq).astype(bool)
        labels = [f"({a.label(i)},{b.label(j)})" for i in range(a.n) for j in range(b.n)]
        return cls(leq, labels)


def validate_poset(matrix, labels: Optional[Sequence[str]] = None) -> FinPoset:
    """Build a FinPoset, reporting the first violated axiom with witness indices."""
    rel = np.asarray(matrix, dtype=bool)
    if rel.size == 0:
        rel = np.zeros((0, 0), dtype=bool)
    if rel.ndim != 2 or rel.shape[0] != rel.shape[1]:
        raise PosetAxiomError("square matrix", tuple(rel.shape))
    n = rel.shape[0]
    if labels is not None and len(labels) != n:
        raise PosetAxiomError("one label per element", (len(labels), n))

    for i in range(n):
        if not rel[i, i]:
            raise PosetAxiomError("reflexivity", (i,))

    both = rel & rel.T
    for i, j in zip(*np.nonzero(both)):
        if i != j:
            raise PosetAxiomError("antisymmetry", (int(i), int(j)))

    if n:
        broken = (~rel) & np.matmul(rel, rel)
        if broken.any():
            i, k = (int(v) for v in np.argwhere(broken)[0])
            j = int(np.flatnonzero(rel[i, :] & rel[:, k])[0])
            raise PosetAxiomError("transitivity", (i, j, k))

    return FinPoset(rel, labels)


# ─────────────────────────────────────────────
# Bounds of subsets
# ─────────────────────────────────────────────

def meet_all(X: FinPoset, subset) -> Optional[int]:
    """Greatest lower bound, or None. The empty meet is the top when there is one."""
    return X.greatest(X.lower_bounds(subset))


def join_all(X: FinPoset, subset) -> Optional[int]:
    return X.least(X.upper_bounds(subset))


def lattice_witness(X: FinPoset) -> Optional[list]:
    """A subset without a join (or None when X is a complete lattice)."""
    if X.n == 0:
        return []
    if X.bottom is None:
        return []
    for i in range(X.n):
        for j in range(i + 1, X.n):
            if X.join_table[i][j] is None:
                return [i, j]
    return None


def is_complete_lattice(X: FinPoset) -> bool:
    # finite: a bottom plus all binary joins gives every join, hence every meet
    return lattice_witness(X) is None


def require_lattice(X: FinPoset):
    witness = lattice_witness(X)
    if witness is not None:
        names = "{" + ",".join(X.label(i) for i in witness) + "}"
        raise NotALatticeError(f"not a complete lattice: {names} has no join", witness=witness)


def is_distributive(X: FinPoset) -> bool:
    if not is_complete_lattice(X):
        return False
    J, M = X.join_table, X.meet_table
    r = range(X.n)
    return all(M[x][J[y][z]] == J[M[x][y]][M[x][z]] for x in r for y in r for z in r)


# ─────────────────────────────────────────────
# Monotone maps
# ─────────────────────────────────────────────

class MonotoneMap:
    def __init__(self, dom: FinPoset, cod: FinPoset, values: Sequence[int], check: bool = True):
        self.dom = dom
        self.cod = cod
        self.values = tuple(int(v) for v in values)
        if len(self.values) != dom.n:
            raise NotAMorphismError("one value per element", [len(self.values), dom.n])
        if check:
            for v in self.values:
                if not 0 <= v < cod.n:
                    raise NotAMorphismError("values in codomain", [v, cod.n])
            for i, j in zip(*np.nonzero(dom.leq)):
                if not cod.leq[self.values[i], self.values[j]]:
                    raise NotAMorphismError("monotonicity", [int(i), int(j)])

    def __call__(self, x: int) -> int:
        return self.values[x]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MonotoneMap)
            and self.dom == other.dom
            and self.cod == other.cod
            and self.values == other.values
        )

    def __hash__(self) -> int:
        return hash((self.dom, self.cod, self.values))

    def __repr__(self) -> str:
        pairs = ", ".join(f"{self.dom.label(i)}->{self.cod.label(v)}" for i, v in enumerate(self.values))
        return f"MonotoneMap({pairs})"

    def image(self, subset) -> int:
        return mask_of(self.values[i] for i in bits(as_mask(subset)))

    def __le__(self, other: "MonotoneMap") -> bool:
        return all(self.cod.le(a, b) for a, b in zip(self.values, other.values))


def identity(X: FinPoset) -> MonotoneMap:
    return MonotoneMap(X, X, range(X.n), check=False)


def compose(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    """g after f."""
    if f.cod != g.dom:
        raise NotAMorphismError("composable", [f.cod.n, g.dom.n])
    return MonotoneMap(f.dom, g.cod, [g.values[v] for v in f.values], check=False)


def monotone_maps(X: FinPoset, Y: FinPoset) -> Iterator[MonotoneMap]:
    """Every monotone map X -> Y, by backtracking along a linear extension of X."""
    order = X.linear_extension
    values = [0] * X.n

    def backtrack(k: int):
        if k == len(order):
            yield MonotoneMap(X, Y, values, check=False)
            return
        x = order[k]
        floor = Y.full
        for p in bits(X.strict_down[x]):
            floor &= Y.up[values[p]]
        for y in bits(floor):
            values[x] = y
            yield from backtrack(k + 1)

    yield from backtrack(0)


def right_adjoint(f: MonotoneMap) -> Optional[MonotoneMap]:
    """f^x(y) = max{x | f(x) <= y}, or None when some such max is missing."""
    X, Y = f.dom, f.cod
    out = []
    for y in range(Y.n):
        pre = mask_of(x for x in range(X.n) if Y.leq[f.values[x], y])
        g = X.greatest(pre)
        if g is None:
            return None
        out.append(g)
    return MonotoneMap(Y, X, out, check=False)


def left_adjoint(f: MonotoneMap) -> Optional[MonotoneMap]:
    """f+(y) = min{x | y <= f(x)}, or None."""
    X, Y = f.dom, f.cod
    out = []
    for y in range(Y.n):
        pre = mask_of(x for x in range(X.n) if Y.leq[y, f.values[x]])
        l = X.least(pre)
        if l is None:
            return None
        out.append(l)
    return MonotoneMap(Y, X, out, check=False)


def is_adjunction(left: MonotoneMap, right: MonotoneMap) -> bool:
    """left(x) <= y iff x <= right(y), exhaustively."""
    X, Y = left.dom, left.cod
    return all(
        Y.leq[left.values[x], y] == X.leq[x, right.values[y]]
        for x in range(X.n)
        for y in range(Y.n)
    )


def preserves_meets(f: MonotoneMap) -> Optional[list]:
    """First subset whose meet f fails to preserve (checked on the empty set and pairs), else None."""
    X, Y = f.dom, f.cod
    if X.top is not None and Y.top is not None and f.values[X.top] != Y.top:
        return []
    for i in range(X.n):
        for j in range(i + 1, X.n):
            m = X.meet_table[i][j]
            if m is None:
                continue
            if Y.meet_table[f.values[i]][f.values[j]] != f.values[m]:
                return [i, j]
    return None
