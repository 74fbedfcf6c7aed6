"""
duality/two_duality.py
Two-valued duality between Phi-algebraic lattices and Psi^op-inflattices.

A Phi-algebraic lattice X is represented by its compact elements K with the
order reversed; an inflattice A goes back to Phi(A^op). Homs into 2 are kept
as their classifying subsets, so both directions are plain poset operations.
With the AllPosets pair this is Birkhoff duality.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from core.errors import NotAMorphismError, PreconditionError, VerificationError
from core.log import log
from core.report import Report, failed, passed
from duality.continuity import compact_elements, is_algebraic, preserves_phi_joins
from duality.doctrines import DoctrinePair, missing_meet, phi_poset
from order.enumerate import find_isomorphism
from order.poset import (
    FinPoset,
    MonotoneMap,
    bits,
    compose,
    identity,
    join_all,
    left_adjoint,
    mask_of,
    preserves_meets,
)


@dataclass(frozen=True)
class DualityWitness:
    forward: MonotoneMap      # X -> Phi(K), x -> K n down(x)
    backward: MonotoneMap     # Phi(K) -> X, phi -> join of phi
    pair: DoctrinePair


def _require_algebraic(X: FinPoset, pair: DoctrinePair):
    if not is_algebraic(X, pair.phi):
        raise PreconditionError(f"{X!r} is not {pair.phi.name}-algebraic")


def dual_of_lattice(X: FinPoset, pair: DoctrinePair) -> FinPoset:
    """The compact elements of X, order reversed."""
    _require_algebraic(X, pair)
    dual = X.induced(compact_elements(X, pair.phi)).opposite()
    witness = missing_meet(dual, pair.psi)
    if witness is not None:
        raise VerificationError(
            f"compacts lack a {pair.psi.name} join required by the dual", witness=witness
        )
    log("DUAL", f"{pair.name}: lattice of {X.n} -> inflattice of {dual.n}")
    return dual


def dual_of_inflattice(A: FinPoset, pair: DoctrinePair) -> FinPoset:
    """Phi(A^op) ordered by inclusion, checked to be Phi-algebraic with compacts A^op."""
    witness = missing_meet(A, pair.psi)
    if witness is not None:
        names = "{" + ",".join(A.label(i) for i in witness) + "}"
        raise PreconditionError(f"{names} has no meet in A", witness=witness)
    _, L = phi_poset(pair.phi, A.opposite())
    if not is_algebraic(L, pair.phi):
        raise VerificationError(f"Phi(A^op) is not {pair.phi.name}-algebraic", witness=L.n)
    compacts = L.induced(compact_elements(L, pair.phi))
    if find_isomorphism(compacts, A.opposite()) is None:
        raise VerificationError("compacts of Phi(A^op) are not A^op", witness=[compacts.n, A.n])
    log("DUAL", f"{pair.name}: inflattice of {A.n} -> lattice of {L.n}")
    return L


def roundtrip(X: FinPoset, pair: DoctrinePair) -> DualityWitness:
    _require_algebraic(X, pair)
    K = compact_elements(X, pair.phi)
    order = list(bits(K))
    position = {k: i for i, k in enumerate(order)}
    masks, PK = phi_poset(pair.phi, X.induced(K))
    index = {m: i for i, m in enumerate(masks)}

    forward_values = []
    for x in range(X.n):
        m = mask_of(position[k] for k in bits(K & X.down[x]))
        if m not in index:
            raise VerificationError("compacts below an element do not form a Phi-lower set", witness=x)
        forward_values.append(index[m])
    backward_values = [join_all(X, mask_of(order[i] for i in bits(m))) for m in masks]

    forward = MonotoneMap(X, PK, forward_values)
    backward = MonotoneMap(PK, X, backward_values)
    if compose(backward, forward) != identity(X) or compose(forward, backward) != identity(PK):
        raise VerificationError(
            "evaluation and join are not mutually inverse",
            witness={"forward": list(forward_values), "backward": list(backward_values)},
        )
    for f in (forward, backward):
        if preserves_meets(f) is not None:
            raise VerificationError("round trip map does not preserve meets", witness=preserves_meets(f))
    return DualityWitness(forward, backward, pair)


def lattice_morphism_laws(f: MonotoneMap, d) -> Optional[tuple]:
    """(law, witness) for the first law f breaks, or None for a morphism."""
    witness = preserves_meets(f)
    if witness is not None:
        return "meets", witness
    witness = preserves_phi_joins(f, d)
    if witness is not None:
        return "phi-joins", witness
    return None


def dual_morphism(f: MonotoneMap, pair: DoctrinePair) -> MonotoneMap:
    """
    For f : X -> Y, the map dual(Y) -> dual(X) given by the left adjoint of f
    restricted to the compacts of Y.
    """
    broken = lattice_morphism_laws(f, pair.phi)
    if broken is not None:
        raise NotAMorphismError(*broken)
    X, Y = f.dom, f.cod
    dual_x, dual_y = dual_of_lattice(X, pair), dual_of_lattice(Y, pair)
    KX, KY = list(bits(compact_elements(X, pair.phi))), list(bits(compact_elements(Y, pair.phi)))
    position = {k: i for i, k in enumerate(KX)}

    left = left_adjoint(f)
    if left is None:
        raise VerificationError("meet-preserving map without a left adjoint", witness=list(f.values))
    values = []
    for k in KY:
        image = left(k)
        if image not in position:
            raise VerificationError("left adjoint leaves the compact elements", witness=[k, image])
        values.append(position[image])
    out = MonotoneMap(dual_y, dual_x, values)

    # the dual side carries the Psi-joins of compacts as meets
    for size in range(0, len(KY) + 1):
        for chosen in combinations(range(len(KY)), size):
            s = mask_of(chosen)
            if not pair.psi.holds(dual_y.opposite(), s):
                continue
            top = join_all(Y, mask_of(KY[i] for i in chosen))
            if left(top) != join_all(X, mask_of(left(KY[i]) for i in chosen)):
                raise VerificationError("dual map does not preserve the required meets", witness=list(chosen))
    return out


def double_dual_check(A: FinPoset, pair: DoctrinePair) -> Report:
    report = Report(f"double-dual:{pair.name}")
    L = dual_of_inflattice(A, pair)
    back = dual_of_lattice(L, pair)
    if find_isomorphism(back, A) is None:
        report.add(failed("double-dual", "A is not recovered from Phi(A^op)",
                          {"n": A.n, "leq": A.leq.tolist()}))
    else:
        report.add(passed("double-dual"))
    return report
