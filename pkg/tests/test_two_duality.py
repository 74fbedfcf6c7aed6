# tests/test_two_duality.py
import pytest

from core.errors import NotAMorphismError, PreconditionError, UnsupportedInstance
from duality.doctrines import PAIR_ORDER, pair_by_name
from duality.two_duality import (
    double_dual_check,
    dual_morphism,
    dual_of_inflattice,
    dual_of_lattice,
    lattice_morphism_laws,
    roundtrip,
)
from formats.codec import poset_to_json
from order.enumerate import is_isomorphic, lattices_up_to, posets_up_to
from order.poset import FinPoset, MonotoneMap, compose, identity, is_distributive
from suites import hms


def test_directed_dual_of_a_finite_lattice_is_its_opposite(n5):
    pair = pair_by_name("directed")
    assert is_isomorphic(dual_of_lattice(n5, pair), n5.opposite())
    assert is_isomorphic(dual_of_lattice(FinPoset.chain(3), pair), FinPoset.chain(3))


def test_birkhoff_dual_of_the_diamond(diamond):
    dual = dual_of_lattice(diamond, pair_by_name("all"))
    assert is_isomorphic(dual, FinPoset.antichain(2))


def test_birkhoff_rejects_non_distributive_lattices(m3, n5):
    for X in (m3, n5):
        with pytest.raises(PreconditionError):
            dual_of_lattice(X, pair_by_name("all"))


def test_lower_sets_of_an_antichain():
    L = dual_of_inflattice(FinPoset.antichain(2), pair_by_name("all"))
    assert is_isomorphic(L, FinPoset.product(FinPoset.chain(2), FinPoset.chain(2)))


def test_inflattice_needs_its_meets():
    # under the directed pair every finite subset needs a meet, and two minimal elements have none
    with pytest.raises(PreconditionError):
        dual_of_inflattice(FinPoset.antichain(2), pair_by_name("directed"))


@pytest.mark.parametrize("name", ["directed", "all"])
def test_round_trip_on_algebraic_lattices(name):
    pair = pair_by_name(name)
    for X in lattices_up_to(5):
        if name == "all" and not is_distributive(X):
            continue
        w = roundtrip(X, pair)
        assert compose(w.backward, w.forward) == identity(X)


def test_double_dual_of_small_lattices():
    pair = pair_by_name("directed")
    for A in lattices_up_to(4):
        assert double_dual_check(A, pair).passed


def test_double_dual_of_small_posets():
    pair = pair_by_name("all")
    for A in posets_up_to(3):
        assert double_dual_check(A, pair).passed


@pytest.mark.parametrize("name", PAIR_ORDER)
def test_double_dual_for_every_pair(name):
    pair = pair_by_name(name)
    eligible = 0
    for A in posets_up_to(5):
        try:
            report = double_dual_check(A, pair)
        except PreconditionError:
            continue
        eligible += 1
        assert report.passed, (A.leq.tolist(), report.to_json())
    assert eligible > 0


def test_inflattice_double_dual_suite_check():
    assert hms.inflattice_double_dual("all", poset_to_json(FinPoset.chain(3))) is None
    with pytest.raises(UnsupportedInstance):
        hms.inflattice_double_dual("directed", poset_to_json(FinPoset.antichain(2)))
    names = {(name, args["pair"]) for name, args in hms.items({"seed": 1, "max_size": 3, "samples": 0})}
    assert {("inflattice-double-dual", p) for p in PAIR_ORDER} <= names


def test_dual_of_identity_is_identity(diamond):
    pair = pair_by_name("all")
    d = dual_morphism(identity(diamond), pair)
    assert d.values == tuple(range(d.dom.n))


def test_dual_morphisms_compose_contravariantly(chain3):
    pair = pair_by_name("directed")
    # top-preserving maps of the three-element chain
    f = MonotoneMap(chain3, chain3, [1, 1, 2])
    g = MonotoneMap(chain3, chain3, [0, 2, 2])
    assert dual_morphism(compose(g, f), pair) == compose(dual_morphism(f, pair), dual_morphism(g, pair))


def test_dual_morphism_needs_meet_preservation(chain3):
    f = MonotoneMap(chain3, chain3, [0, 0, 1])
    with pytest.raises(NotAMorphismError):
        dual_morphism(f, pair_by_name("directed"))


def test_morphism_laws_name_the_broken_law(chain3, diamond):
    assert lattice_morphism_laws(MonotoneMap(chain3, chain3, [0, 0, 1]), pair_by_name("directed").phi) == ("meets", [])
    f = MonotoneMap(diamond, chain3, [0, 1, 0, 2])
    assert lattice_morphism_laws(f, pair_by_name("directed").phi) is None
    law, witness = lattice_morphism_laws(f, pair_by_name("all").phi)
    assert law == "phi-joins" and witness
