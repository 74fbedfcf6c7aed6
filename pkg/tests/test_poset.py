# tests/test_poset.py
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from core.errors import NotALatticeError, NotAMorphismError, PosetAxiomError, SizeGuardError
from order.enumerate import (
    canonical_form,
    enumerate_lattices,
    enumerate_posets,
    find_isomorphism,
    is_isomorphic,
)
from order.lowersets import (
    LowerSet,
    enumerate_lower_sets,
    lower_set,
    lower_set_lattice,
    principal_ideal,
    pushforward_map,
)
from order.poset import (
    FinPoset,
    MonotoneMap,
    as_mask,
    identity,
    is_adjunction,
    is_complete_lattice,
    is_distributive,
    join_all,
    left_adjoint,
    meet_all,
    monotone_maps,
    preserves_meets,
    require_lattice,
    right_adjoint,
    validate_poset,
)
from strategies import posets


# ── axioms ──

def test_reflexivity_failure_names_the_element():
    with pytest.raises(PosetAxiomError) as e:
        validate_poset([[True, False], [False, False]])
    assert e.value.axiom == "reflexivity"
    assert e.value.witness == [1]


def test_antisymmetry_failure():
    with pytest.raises(PosetAxiomError) as e:
        validate_poset([[True, True], [True, True]])
    assert e.value.axiom == "antisymmetry"
    assert sorted(e.value.witness) == [0, 1]


def test_transitivity_failure_gives_the_middle_element():
    leq = [[True, True, False], [False, True, True], [False, False, True]]
    with pytest.raises(PosetAxiomError) as e:
        validate_poset(leq)
    assert e.value.axiom == "transitivity"
    assert e.value.witness == [0, 1, 2]


def test_empty_poset_is_valid():
    X = validate_poset([])
    assert X.n == 0
    assert X.bottom is None


# ── enumeration ──

def test_poset_counts():
    assert [len(list(enumerate_posets(n))) for n in range(6)] == [1, 1, 2, 5, 16, 63]


def test_lattice_counts():
    assert [len(list(enumerate_lattices(n))) for n in range(1, 7)] == [1, 1, 1, 2, 5, 15]


def test_enumerated_posets_are_pairwise_non_isomorphic():
    found = list(enumerate_posets(4))
    keys = {canonical_form(X) for X in found}
    assert len(keys) == len(found)


@given(posets(max_n=5), st.randoms(use_true_random=False))
def test_canonical_form_ignores_relabelling(X, random):
    perm = list(range(X.n))
    random.shuffle(perm)
    Y = X.relabel(perm)
    assert canonical_form(X) == canonical_form(Y)
    assert is_isomorphic(X, Y)
    iso = find_isomorphism(X, Y)
    assert iso is not None
    assert all(X.le(i, j) == Y.le(iso[i], iso[j]) for i in range(X.n) for j in range(X.n))


def test_chain_and_antichain_are_not_isomorphic():
    assert not is_isomorphic(FinPoset.chain(3), FinPoset.antichain(3))


@given(posets(max_n=6))
def test_opposite_is_an_involution(X):
    assert X.opposite().opposite() == X


# ── lattices ──

def test_diamond_operations(diamond):
    assert diamond.join(1, 2) == 3
    assert diamond.meet(1, 2) == 0
    assert len(diamond.hasse_edges) == 4
    assert is_distributive(diamond)


def test_masks_are_plain_ints():
    X = FinPoset.chain(3)
    assert all(type(m) is int for m in X.up)
    assert all(type(m) is int for m in X.down)
    assert as_mask(np.int64(3)) == 3 and type(as_mask(np.int64(3))) is int
    assert as_mask([np.int64(0), np.int64(2)]) == 0b101


def test_joins_and_meets_of_index_lists(diamond):
    assert join_all(FinPoset.chain(3), [0, 1]) == 1
    assert join_all(diamond, [1, 2]) == 3
    assert meet_all(diamond, np.array([1, 2])) == 0
    assert join_all(diamond, []) == 0
    assert meet_all(diamond, []) == 3


def test_m3_and_n5_are_not_distributive(m3, n5):
    assert is_complete_lattice(m3) and is_complete_lattice(n5)
    assert not is_distributive(m3)
    assert not is_distributive(n5)


def test_antichain_is_not_a_lattice():
    X = FinPoset.antichain(2)
    with pytest.raises(NotALatticeError):
        require_lattice(X)
    with pytest.raises(NotALatticeError):
        X.join(0, 1)


# ── monotone maps and adjoints ──

def test_monotone_map_rejects_order_reversal():
    with pytest.raises(NotAMorphismError):
        MonotoneMap(FinPoset.chain(2), FinPoset.chain(2), [1, 0])


@pytest.mark.parametrize("n,m", [(1, 3), (2, 2), (3, 3), (2, 4)])
def test_monotone_maps_between_chains(n, m):
    assert len(list(monotone_maps(FinPoset.chain(n), FinPoset.chain(m)))) == comb(n + m - 1, n)


def test_adjoints_of_a_collapse(chain3):
    f = MonotoneMap(chain3, FinPoset.chain(2), [0, 1, 1])
    r = right_adjoint(f)
    l = left_adjoint(f)
    assert r.values == (0, 2)
    assert l.values == (0, 1)
    assert is_adjunction(f, r)
    assert is_adjunction(l, f)


def test_constant_bottom_has_no_left_adjoint():
    f = MonotoneMap(FinPoset.chain(2), FinPoset.chain(2), [0, 0])
    assert left_adjoint(f) is None
    assert preserves_meets(f) == []


@given(posets(max_n=4))
def test_identity_is_self_adjoint(X):
    assert is_adjunction(identity(X), identity(X))


# ── lower sets ──

def test_lower_set_counts():
    assert len(enumerate_lower_sets(FinPoset.chain(3))) == 4
    assert len(enumerate_lower_sets(FinPoset.antichain(3))) == 8


def test_lower_set_rejects_non_closed_subsets(chain3):
    with pytest.raises(PosetAxiomError) as e:
        lower_set(chain3, [1])
    assert e.value.axiom == "downward closure"
    assert principal_ideal(chain3, 1).elements() == [0, 1]


def test_lower_set_enumeration_respects_its_bound():
    with pytest.raises(SizeGuardError):
        enumerate_lower_sets(FinPoset.antichain(5), 10)


@given(posets(max_n=4))
def test_union_of_principal_family_is_the_lower_set(X):
    L = lower_set_lattice(X)
    P = L.poset
    for k in range(len(L)):
        family = LowerSet(P, P.down[k])
        assert L.union(family) == L.element(k)


@given(posets(max_n=4))
def test_unit_is_an_order_embedding(X):
    L = lower_set_lattice(X)
    for x in range(X.n):
        for y in range(X.n):
            assert X.le(x, y) == L.poset.le(L.unit(x), L.unit(y))


@given(posets(max_n=4))
def test_pushforward_of_identity_is_identity(X):
    L = lower_set_lattice(X)
    assert pushforward_map(identity(X)).values == tuple(range(len(L)))


def test_product_order_matrix_is_a_kronecker_product(diamond):
    expected = np.array([[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]], dtype=bool)
    assert (diamond.leq == expected).all()
