# tests/test_gelfand.py
from fractions import Fraction
from math import floor

import numpy as np
import pytest
from hypothesis import given

from core.errors import PreconditionError, UnsupportedInstance
from duality.doctrines import ALL_POSETS, DIRECTED, pair_by_name
from duality.gelfand import (
    approximate_inverse,
    eta_roundtrip,
    eta_separation,
    interpolate_chain,
    iota,
    iota_embedding_check,
    iota_tilde,
    orbit_Ur,
    urysohn_separate,
)
from order.enumerate import lattices_up_to
from order.poset import is_distributive
from scale.umodules import FunctionModule, InfinitesimalModule, IntervalModule, PLModule, le_r
from strategies import grid_points

Q = Fraction
I = IntervalModule()


# ── interpolation and separation ──

def test_chain_on_the_interval_is_linear():
    chain = interpolate_chain(None, DIRECTED, 0, 1, 2)
    assert chain == {Q(k, 4): Q(k, 4) for k in range(5)}


def test_chain_needs_way_below(chain3):
    with pytest.raises(PreconditionError):
        interpolate_chain(chain3, ALL_POSETS, 2, 0, 2)
    with pytest.raises(PreconditionError):
        interpolate_chain(None, ALL_POSETS, Q(1, 2), Q(1, 2), 2)


def test_urysohn_on_a_chain(chain3):
    f = urysohn_separate(chain3, ALL_POSETS, 0, 2)
    assert f.table == (0, 1, 1)
    assert f(0) == 0 and f(2) == 1
    assert f.left_at(1) == 1


def test_urysohn_on_the_interval():
    f = urysohn_separate(None, DIRECTED, Q(1, 4), Q(3, 4))
    assert f(Q(1, 2)) == Q(1, 2)
    assert f(Q(1, 8)) == 0 and f(Q(7, 8)) == 1
    assert f.left_at(1) == Q(3, 4)
    assert f.left_at(Q(1, 2)) == Q(1, 2)
    with pytest.raises(KeyError):
        f.left_at(Q(1, 3))


def test_urysohn_chain_is_reported(chain3):
    f = urysohn_separate(chain3, DIRECTED, 0, 2, depth=3)
    chain = dict(f.chain)
    assert chain[Q(0)] == 0 and chain[Q(1)] == 2
    assert len(chain) == 9
    assert f(2) == 1
    assert f.to_json()["depth"] == 3


@pytest.mark.parametrize("pair", ["directed", "all"])
def test_separation_on_small_lattices(pair):
    d = pair_by_name(pair).phi
    for X in lattices_up_to(5):
        if pair == "all" and not is_distributive(X):
            continue
        for x in range(X.n):
            for y in range(X.n):
                if not X.le(x, y):
                    f = eta_separation(X, d, x, y)
                    assert f(x) > f(y)


@given(grid_points(), grid_points())
def test_separation_on_the_interval(x, y):
    if x <= y:
        with pytest.raises(PreconditionError):
            eta_separation(None, DIRECTED, x, y)
    else:
        f = eta_separation(None, DIRECTED, x, y)
        assert f(x) > f(y)


# ── orbit filters ──

def test_orbit_filter_membership():
    assert orbit_Ur(I, Q(1, 2), Q(1, 2), 1)
    assert not orbit_Ur(I, Q(1, 2), Q(1, 2), 0)
    assert orbit_Ur(I, Q(1, 4), Q(1, 2), 0)
    assert not orbit_Ur(I, 1, 0, 1)


def test_iota_tilde_on_the_interval():
    assert iota_tilde(I, Q(1, 2), Q(3, 4)).minima == (0,)
    assert iota_tilde(I, Q(1, 2), Q(1, 4)).minima == (1,)
    assert iota_tilde(I, Q(1, 2), Q(1, 2)).minima == (1,)


def test_iota_reflects_the_order():
    pairs = [(Q(1, 4), Q(3, 4)), (Q(3, 4), Q(1, 4)), (Q(1), Q(0)), (Q(1, 2), Q(1, 2))]
    assert iota_embedding_check(I, pairs).passed


def test_iota_on_the_infinitesimal_module():
    A = InfinitesimalModule()
    rng = np.random.default_rng(5)
    pairs = [(A.sample(rng), A.sample(rng)) for _ in range(8)]
    assert iota_embedding_check(A, pairs).passed


def test_iota_on_function_modules(diamond):
    A = FunctionModule(diamond)
    rng = np.random.default_rng(3)
    pairs = [(A.sample(rng), A.sample(rng)) for _ in range(8)]
    assert iota_embedding_check(A, pairs, n=4).passed


# ── approximate inverse ──

@pytest.mark.parametrize("n", [2, 4, 8, 16])
@pytest.mark.parametrize("a", [Q(0), Q(5, 8), Q(1, 3), Q(1)])
def test_approximate_inverse_on_the_interval(a, n):
    b = approximate_inverse(I, iota(I, a), n)
    assert b == Q(floor(n * a), n)
    assert le_r(I, a, b, Q(2, n)) and le_r(I, b, a, Q(2, n))


def test_approximate_inverse_on_functions(chain3):
    A = FunctionModule(chain3)
    a = A.element([0, Q(3, 8), 1])
    b = approximate_inverse(A, iota(A, a), 4)
    assert le_r(A, a, b, Q(1, 2)) and le_r(A, b, a, Q(1, 2))


def test_approximate_inverse_preconditions():
    with pytest.raises(UnsupportedInstance):
        approximate_inverse(PLModule(), lambda t: None, 4)
    with pytest.raises(ValueError):
        approximate_inverse(I, iota(I, Q(1, 2)), 1)


# ── evaluation into the double dual ──

@pytest.mark.parametrize("pair", ["directed", "all"])
def test_eta_round_trip(pair, diamond, chain3):
    for X in (diamond, chain3):
        report = eta_roundtrip(X, pair_by_name(pair), np.random.default_rng(11))
        assert report.passed, report.to_json()
