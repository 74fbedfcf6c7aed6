"""
duality/doctrines.py
Join doctrines as executable objects: membership predicates on finite posets,
the free Phi-suplattice Phi(X), Phi-compact lower sets, saturation and soundness checks.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Optional

from core.budget import MAX_FAMILY, get_size_budget, guard_size
from core.errors import SizeGuardError
from core.report import Report, failed, passed, skipped
from formats.codec import poset_to_json
from order.enumerate import posets_up_to
from order.lowersets import LowerSet, enumerate_lower_sets, inclusion_poset, lower_set_lattice
from order.poset import FinPoset, bits, join_all, meet_all, monotone_maps


# ─────────────────────────────────────────────
# Finite membership rules
# ─────────────────────────────────────────────

def _all(P: FinPoset) -> bool:
    return True


def _nonempty(P: FinPoset) -> bool:
    return P.n > 0


def _has_greatest(P: FinPoset) -> bool:
    return P.n > 0 and P.top is not None


def _empty_or_greatest(P: FinPoset) -> bool:
    return P.n == 0 or P.top is not None


# fast paths on induced subposets X|mask, so Phi(X) never builds subposet objects
def _all_in(X: FinPoset, mask: int) -> bool:
    return True


def _nonempty_in(X: FinPoset, mask: int) -> bool:
    return mask != 0


def _has_greatest_in(X: FinPoset, mask: int) -> bool:
    return mask != 0 and X.greatest(mask) is not None


def _empty_or_greatest_in(X: FinPoset, mask: int) -> bool:
    return mask == 0 or X.greatest(mask) is not None


@dataclass(frozen=True)
class Doctrine:
    name: str
    member: Callable[[FinPoset], bool] = field(compare=False, repr=False)
    contains_empty: bool = field(default=False, compare=False)
    contains_omega: bool = field(default=False, compare=False)
    dual_name: Optional[str] = field(default=None, compare=False)
    member_in: Optional[Callable[[FinPoset, int], bool]] = field(default=None, compare=False, repr=False)
    description: str = field(default="", compare=False, repr=False)

    def holds(self, X: FinPoset, mask: int) -> bool:
        """Does the subposet of X induced by `mask` belong to the doctrine?"""
        if self.member_in is not None:
            return self.member_in(X, mask)
        return bool(self.member(X.induced(mask)))

    @property
    def builtin(self) -> bool:
        return self.name in DOCTRINES


@dataclass(frozen=True)
class DoctrinePair:
    phi: Doctrine
    psi: Doctrine

    @property
    def name(self) -> str:
        return self.phi.name


def _d(name, member, member_in, empty, omega, dual, description) -> Doctrine:
    return Doctrine(name, member, empty, omega, dual, member_in, description)


DIRECTED = _d("directed", _has_greatest, _has_greatest_in, False, True,
              "finite-cofinality", "directed posets")
EMPTY_OR_DIRECTED = _d("empty-or-directed", _empty_or_greatest, _empty_or_greatest_in, True, True,
                       "nonempty-finite-cofinality", "empty or directed posets")
NONEMPTY = _d("nonempty", _nonempty, _nonempty_in, False, True,
              "empty-or-greatest", "nonempty posets")
ALL_POSETS = _d("all", _all, _all_in, True, True,
                "has-greatest", "all posets")

FINITE_COFINALITY = _d("finite-cofinality", _all, _all_in, True, False,
                       "directed", "posets with finite cofinality")
NONEMPTY_FINITE_COFINALITY = _d("nonempty-finite-cofinality", _nonempty, _nonempty_in, False, False,
                                "empty-or-directed", "nonempty posets with finite cofinality")
EMPTY_OR_GREATEST = _d("empty-or-greatest", _empty_or_greatest, _empty_or_greatest_in, True, False,
                       "nonempty", "empty posets or posets with a greatest element")
HAS_GREATEST = _d("has-greatest", _has_greatest, _has_greatest_in, False, False,
                  "all", "posets with a greatest element")

DOCTRINES = {
    d.name: d
    for d in (
        DIRECTED, EMPTY_OR_DIRECTED, NONEMPTY, ALL_POSETS,
        FINITE_COFINALITY, NONEMPTY_FINITE_COFINALITY, EMPTY_OR_GREATEST, HAS_GREATEST,
    )
}

ALIASES = {
    "directedposets": "directed",
    "emptyordirectedposets": "empty-or-directed",
    "nonemptyposets": "nonempty",
    "allposets": "all",
    "finitecofinality": "finite-cofinality",
    "nonemptyfinitecofinality": "nonempty-finite-cofinality",
    "emptyorgreatest": "empty-or-greatest",
    "hasgreatest": "has-greatest",
    "emptyordirected": "empty-or-directed",
}

PAIR_ORDER = ("directed", "empty-or-directed", "nonempty", "all")


def doctrine_by_name(name: str) -> Doctrine:
    key = name.strip().lower()
    if key in DOCTRINES:
        return DOCTRINES[key]
    squashed = "".join(ch for ch in key if ch.isalnum())
    if squashed in ALIASES:
        return DOCTRINES[ALIASES[squashed]]
    raise ValueError(f"Doctrine '{name}' not found. Available: {', '.join(DOCTRINES)}")


def builtin_doctrines() -> list:
    return [DoctrinePair(DOCTRINES[n], DOCTRINES[DOCTRINES[n].dual_name]) for n in PAIR_ORDER]


def pair_by_name(name: str) -> DoctrinePair:
    d = doctrine_by_name(name)
    for pair in builtin_doctrines():
        if d in (pair.phi, pair.psi):
            return pair if d == pair.phi else DoctrinePair(pair.psi, pair.phi)
    raise ValueError(f"No sound pair for doctrine '{name}'")


def make_doctrine(name: str, member: Callable[[FinPoset], bool],
                  contains_empty: Optional[bool] = None, contains_omega: bool = False) -> Doctrine:
    """User doctrine. Only finite evidence is ever reported for these, never soundness."""
    empty = bool(member(FinPoset([]))) if contains_empty is None else contains_empty
    return Doctrine(name, member, empty, contains_omega, None, None, "user doctrine")


# ─────────────────────────────────────────────
# Phi(X) and Phi*(X)
# ─────────────────────────────────────────────

def phi_masks(d: Doctrine, X: FinPoset) -> tuple:
    guard_size("phi_of", X.n)
    return tuple(m for m in enumerate_lower_sets(X) if d.holds(X, m))


def phi_of(d: Doctrine, X: FinPoset) -> frozenset:
    return frozenset(LowerSet(X, m) for m in phi_masks(d, X))


def phi_poset(d: Doctrine, X: FinPoset) -> tuple:
    """(masks, Phi(X) ordered by inclusion)."""
    masks = phi_masks(d, X)
    labels = ["{" + ",".join(X.label(i) for i in bits(m)) + "}" for m in masks]
    return masks, inclusion_poset(masks, labels)


def compact_lower_set_masks(d: Doctrine, X: FinPoset) -> tuple:
    guard_size("phi_star", X.n)
    L = lower_set_lattice(X)
    LP = L.poset
    try:
        second_level = enumerate_lower_sets(LP)
    except SizeGuardError as e:
        raise SizeGuardError("phi_star", e.size, e.bound) from e
    families = []
    for fam in second_level:
        if not d.holds(LP, fam):
            continue
        union = 0
        for k in bits(fam):
            union |= L.masks[k]
        families.append((fam, union))
    out = []
    for k, psi in enumerate(L.masks):
        # psi is compact iff every Phi-family covering it already contains it
        if all(fam >> k & 1 for fam, union in families if psi & ~union == 0):
            out.append(psi)
    return tuple(out)


def phi_star(d: Doctrine, X: FinPoset) -> frozenset:
    return frozenset(LowerSet(X, m) for m in compact_lower_set_masks(d, X))


# ─────────────────────────────────────────────
# Joins, meets and ideals
# ─────────────────────────────────────────────

def _subsets(n: int) -> Iterable[int]:
    return range(1 << n)


def missing_join(X: FinPoset, d: Doctrine) -> Optional[list]:
    """A subset in d without a join in X, or None when X is a d-suplattice."""
    for s in _subsets(X.n):
        if d.holds(X, s) and join_all(X, s) is None:
            return list(bits(s))
    return None


def missing_meet(A: FinPoset, d: Doctrine) -> Optional[list]:
    """A subset S of A with S^op in d but no meet in A, or None when A is a d^op-inflattice."""
    return missing_join(A.opposite(), d)


def psi_ideals(pair: DoctrinePair, X: FinPoset) -> tuple:
    """Lower sets of X closed under the psi-joins of X."""
    psi = pair.psi
    closing = [s for s in _subsets(X.n) if psi.holds(X, s)]
    joins = {s: join_all(X, s) for s in closing}
    out = []
    for m in enumerate_lower_sets(X):
        if all(joins[s] is not None and m >> joins[s] & 1 for s in closing if s & ~m == 0):
            out.append(m)
    return tuple(out)


# ─────────────────────────────────────────────
# Saturation
# ─────────────────────────────────────────────

def _check_unit(d: Doctrine):
    if d.member(FinPoset.chain(1)):
        return passed("unit")
    return failed("unit", "the singleton poset is not a member", {"poset": poset_to_json(FinPoset.chain(1))})


def _check_monad_union(d: Doctrine, corpus: list):
    """Unions of Phi-families of Phi-lower sets stay in Phi (lower-set form of the multiplication)."""
    for X in corpus:
        masks, PX = phi_poset(d, X)
        for fam in enumerate_lower_sets(PX):
            if not d.holds(PX, fam):
                continue
            union = 0
            for k in bits(fam):
                union |= masks[k]
            if not d.holds(X, union):
                return failed(
                    "multiplication",
                    "union of a Phi-family of Phi-lower sets leaves Phi",
                    {"poset": poset_to_json(X), "family": [list(bits(masks[k])) for k in bits(fam)]},
                )
    return None


def _check_subposet_union(d: Doctrine, corpus: list, max_family: int):
    """A poset covered by a Phi-indexed family of Phi-subposets is in Phi (families up to max_family)."""
    for P in corpus:
        if d.member(P):
            continue
        pieces = [s for s in _subsets(P.n) if d.holds(P, s)]
        for size in range(1, max_family + 1):
            for family in combinations(pieces, size):
                union = 0
                for s in family:
                    union |= s
                if union != P.full:
                    continue
                if d.member(inclusion_poset(family)):
                    return failed(
                        "multiplication",
                        "a union of Phi-subposets indexed by a Phi-poset is not in Phi",
                        {"poset": poset_to_json(P), "family": [list(bits(s)) for s in family]},
                    )
    return None


def _check_cofinal_image(d: Doctrine, corpus: list):
    inside = [P for P in corpus if d.member(P)]
    outside = [Q for Q in corpus if not d.member(Q)]
    for P in inside:
        for Q in outside:
            for f in monotone_maps(P, Q):
                img = f.image(P.full)
                closure = 0
                for y in bits(img):
                    closure |= Q.down[y]
                if closure == Q.full:
                    return failed(
                        "cofinal-image",
                        "a monotone image with cofinal range leaves Phi",
                        {"source": poset_to_json(P), "target": poset_to_json(Q), "map": list(f.values)},
                    )
    return passed("cofinal-image")


def _check_cofinal_subposet(d: Doctrine, corpus: list):
    for Q in corpus:
        if not d.member(Q):
            continue
        for s in _subsets(Q.n):
            closure = 0
            for y in bits(s):
                closure |= Q.down[y]
            if closure == Q.full and not d.holds(Q, s):
                return failed(
                    "cofinal-subposet",
                    "a cofinal subposet of a Phi-poset is not in Phi",
                    {"poset": poset_to_json(Q), "subset": list(bits(s))},
                )
    return passed("cofinal-subposet")


def check_saturation(d: Doctrine, corpus: Optional[list] = None, max_family: int = MAX_FAMILY) -> Report:
    if corpus is None:
        corpus = posets_up_to(get_size_budget("saturation"))
    report = Report(f"saturation:{d.name}")
    report.add(_check_unit(d))
    report.add(
        _check_monad_union(d, corpus)
        or _check_subposet_union(d, corpus, max_family)
        or passed("multiplication")
    )
    report.add(_check_cofinal_image(d, corpus))
    report.add(_check_cofinal_subposet(d, corpus))
    report.notes.append(f"corpus of {len(corpus)} posets, subposet families up to {max_family}")
    return report


def check_submonad(d: Doctrine, X: FinPoset) -> Report:
    """Phi(X) contains every principal ideal and is closed under Phi-unions."""
    report = Report(f"submonad:{d.name}")
    masks = set(phi_masks(d, X))
    missing = [x for x in range(X.n) if X.down[x] not in masks]
    if missing:
        report.add(failed("unit", "principal ideal outside Phi(X)", {"element": missing[0]}))
    else:
        report.add(passed("unit"))
    report.add(_check_monad_union(d, [X]) or passed("multiplication"))
    return report


# ─────────────────────────────────────────────
# Soundness at finite scale
# ─────────────────────────────────────────────

def check_soundness_finite(pair: DoctrinePair, X: FinPoset) -> Report:
    phi, psi = pair.phi, pair.psi
    report = Report(f"soundness:{phi.name}/{psi.name}")
    L = lower_set_lattice(X)
    psi_sets = [m for m in L.masks if psi.holds(X, m)]

    # (a) every lower set is the union of a Phi-family of Psi-lower sets
    generated = passed("generation")
    psi_order = inclusion_poset(psi_sets)
    for theta in L.masks:
        below = 0
        union = 0
        for k, m in enumerate(psi_sets):
            if m & ~theta == 0:
                below |= 1 << k
                union |= m
        if union != theta or not phi.holds(psi_order, below):
            generated = failed(
                "generation",
                "lower set is not a Phi-join of Psi-lower sets",
                {"poset": poset_to_json(X), "lower_set": list(bits(theta))},
            )
            break
    report.add(generated)

    # (b) on Psi-suplattices, Phi(X) is exactly the set of Psi-ideals
    if missing_join(X, psi) is None:
        ideals = set(psi_ideals(pair, X))
        phis = set(phi_masks(phi, X))
        if ideals == phis:
            report.add(passed("ideals"))
        else:
            diff = sorted(ideals ^ phis)[0]
            report.add(failed(
                "ideals",
                "Phi(X) differs from the Psi-ideals",
                {"poset": poset_to_json(X), "lower_set": list(bits(diff))},
            ))
    else:
        report.add(skipped("ideals", "X lacks Psi-joins"))

    # (c) Phi-compact lower sets are exactly the Psi-lower sets
    compact = set(compact_lower_set_masks(phi, X))
    if compact == set(psi_sets):
        report.add(passed("compacts"))
    else:
        diff = sorted(compact ^ set(psi_sets))[0]
        report.add(failed(
            "compacts",
            "Phi-compact lower sets differ from the Psi-lower sets",
            {"poset": poset_to_json(X), "lower_set": list(bits(diff)), "compact": diff in compact},
        ))
    return report


def check_commutation(pair: DoctrinePair, corpus: Optional[list] = None) -> Report:
    """
    For monotone F : X^op x Y -> 2, phi in Phi(Y), psi in Psi(X):
    min over psi of max over phi of F equals max over phi of min over psi.
    """
    if corpus is None:
        corpus = posets_up_to(3)
    report = Report(f"commutation:{pair.phi.name}/{pair.psi.name}")
    for X in corpus:
        psis = phi_masks(pair.psi, X)
        for Y in corpus:
            phis = phi_masks(pair.phi, Y)
            grid = FinPoset.product(X, Y.opposite())
            for F in enumerate_lower_sets(grid):
                col = [0] * Y.n
                for idx in bits(F):
                    x, y = divmod(idx, Y.n)
                    col[y] |= 1 << x
                for ph in phis:
                    reach = 0
                    for y in bits(ph):
                        reach |= col[y]
                    for ps in psis:
                        lhs = ps & ~reach == 0
                        rhs = any(ps & ~col[y] == 0 for y in bits(ph))
                        if lhs != rhs:
                            report.add(failed(
                                "commutation",
                                "meets over Psi do not commute with joins over Phi in 2",
                                {"X": poset_to_json(X), "Y": poset_to_json(Y), "F": list(bits(F)),
                                 "phi": list(bits(ph)), "psi": list(bits(ps))},
                            ))
                            return report
    report.add(passed("commutation"))
    return report


def check_meet_closure(d: Doctrine, X: FinPoset) -> Optional[list]:
    """Two Phi-lower sets whose intersection leaves Phi(X), or None."""
    masks = phi_masks(d, X)
    inside = set(masks)
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if a & b not in inside:
                return [list(bits(a)), list(bits(b))]
    return None


def check_doctrine_continuity(d: Doctrine, X: FinPoset) -> bool:
    from duality.continuity import is_continuous
    return is_continuous(lower_set_lattice(X).poset, d)


def flags_consistent(pair: DoctrinePair) -> bool:
    return pair.phi.contains_omega != pair.psi.contains_omega
