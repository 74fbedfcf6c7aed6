# tests/test_continuity.py
from fractions import Fraction

import pytest
from hypothesis import given

from core.errors import NoAdjointError, NotALatticeError, PreconditionError
from core.executor import run_check
from duality.continuity import (
    check_algebraic_way_below,
    check_interpolation,
    check_way_props,
    compact_elements,
    continuity_criteria,
    interval_compact,
    interval_way_below,
    is_algebraic,
    is_continuous,
    meet_distributivity_witness,
    transpose_morphism,
    waydown,
)
from duality.doctrines import (
    ALL_POSETS,
    DIRECTED,
    EMPTY_OR_DIRECTED,
    FINITE_COFINALITY,
    NONEMPTY,
    PAIR_ORDER,
    doctrine_by_name,
)
from formats.codec import poset_to_json
from order.enumerate import lattices_up_to
from order.poset import FinPoset, MonotoneMap, identity
from strategies import grid_points
from suites import cts_equiv


def test_compacts_of_the_diamond_per_doctrine(diamond):
    assert compact_elements(diamond, DIRECTED) == 0b1111
    assert compact_elements(diamond, EMPTY_OR_DIRECTED) == 0b1110
    assert compact_elements(diamond, NONEMPTY) == 0b0111
    # completely join-prime: the two atoms
    assert compact_elements(diamond, ALL_POSETS) == 0b0110


def test_way_below_on_a_chain_under_all(chain3):
    W = waydown(chain3, ALL_POSETS)
    assert not W.below(0, 0)
    assert W.below(0, 1) and W.below(1, 1) and W.below(0, 2)
    assert W.masks == (0b000, 0b011, 0b111)


def test_way_below_needs_a_lattice():
    with pytest.raises(NotALatticeError):
        waydown(FinPoset.antichain(2), DIRECTED)


@pytest.mark.parametrize("name", PAIR_ORDER)
def test_every_finite_lattice_is_directed_continuous_and_criteria_agree(name):
    d = doctrine_by_name(name)
    for X in lattices_up_to(5):
        outcomes = {v.check: v.ok for v in continuity_criteria(X, d).verdicts}
        assert len(set(outcomes.values())) == 1, (X, outcomes)
        if d is DIRECTED:
            assert all(outcomes.values())


def test_m3_and_n5_are_not_continuous_for_all_posets(m3, n5):
    for X in (m3, n5):
        assert not is_continuous(X, ALL_POSETS)
        assert meet_distributivity_witness(X, ALL_POSETS) is not None
        assert is_continuous(X, DIRECTED)


def test_distributive_lattices_are_algebraic_for_all_posets(diamond, chain3):
    assert is_algebraic(diamond, ALL_POSETS)
    assert is_algebraic(chain3, ALL_POSETS)
    assert check_interpolation(diamond, ALL_POSETS)


def test_interpolation_needs_continuity(m3):
    with pytest.raises(PreconditionError):
        check_interpolation(m3, ALL_POSETS)


@pytest.mark.parametrize("name", PAIR_ORDER)
def test_way_below_laws(name):
    d = doctrine_by_name(name)
    for X in lattices_up_to(5):
        assert check_way_props(waydown(X, d)).passed
        assert check_algebraic_way_below(X, d).passed


def test_transpose_of_identity(diamond):
    t = transpose_morphism(identity(diamond), ALL_POSETS)
    assert t.left == identity(diamond)
    assert t.preserves_phi_joins and t.preserves_way_below and t.preserves_joins


def test_transpose_needs_meet_preservation():
    f = MonotoneMap(FinPoset.chain(2), FinPoset.chain(2), [0, 0])
    with pytest.raises(NoAdjointError):
        transpose_morphism(f, DIRECTED)


def test_transpose_needs_continuous_lattices(m3, chain3):
    with pytest.raises(PreconditionError) as e:
        transpose_morphism(identity(m3), ALL_POSETS)
    assert e.value.witness["side"] == "domain"
    assert transpose_morphism(identity(m3), DIRECTED).preserves_way_below

    # constant top out of the three-chain keeps every meet
    f = MonotoneMap(chain3, m3, [4, 4, 4])
    with pytest.raises(PreconditionError) as e:
        transpose_morphism(f, ALL_POSETS)
    assert e.value.witness["side"] == "codomain"


def test_inclusion_of_a_chain_into_the_diamond(diamond):
    # keeps meets and the top but sends the join of the atoms above both images
    f = MonotoneMap(diamond, FinPoset.chain(3), [0, 1, 0, 2])
    t = transpose_morphism(f, DIRECTED)
    assert t.left.values == (0, 1, 3)
    assert t.preserves_phi_joins and t.preserves_way_below
    t = transpose_morphism(f, ALL_POSETS)
    assert not t.preserves_phi_joins
    assert not t.preserves_way_below


# ── the unit interval ──

@given(grid_points(), grid_points())
def test_interval_way_below_for_directed(r, s):
    assert interval_way_below(r, s, DIRECTED) == (r < s or r == s == 0)


def test_interval_way_below_for_all():
    assert not interval_way_below(0, 0, ALL_POSETS)
    assert interval_way_below(0, Fraction(1, 2), ALL_POSETS)
    assert not interval_way_below(Fraction(1, 2), Fraction(1, 2), ALL_POSETS)


def test_points_are_compact_without_infinite_joins():
    assert not interval_compact(Fraction(1, 2), DIRECTED)
    assert interval_compact(Fraction(1, 2), FINITE_COFINALITY)
    assert not interval_compact(0, FINITE_COFINALITY)


# ── lower-set lattices ──

def test_doctrine_continuity_reaches_five_element_posets():
    sizes = [args["poset"]["n"] for name, args in cts_equiv.items({"seed": 1, "max_size": 5})
             if name == "doctrine-continuity"]
    assert max(sizes) == 5
    for d in PAIR_ORDER:
        v = run_check("doctrine-continuity", cts_equiv.doctrine_continuity,
                      {"doctrine": d, "poset": poset_to_json(FinPoset.chain(5))})
        assert v.ok and not v.skipped
    wide = run_check("doctrine-continuity", cts_equiv.doctrine_continuity,
                     {"doctrine": "all", "poset": poset_to_json(FinPoset.antichain(4))})
    assert wide.skipped
