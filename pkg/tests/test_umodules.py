# tests/test_umodules.py
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from core.errors import IncompatibleError, NotALatticeError, PreconditionError, UnsupportedInstance
from duality.doctrines import pair_by_name
from order.poset import FinPoset
from scale.interval import identity, threshold, trunc_add
from scale.rational import dot_plus
from scale.umodules import (
    ALMOST_ONE,
    FunctionModule,
    InfinitesimalModule,
    IntervalModule,
    PLModule,
    check_archimedean,
    check_uhat_meets,
    closed_invariant_filter,
    dist,
    extend_to_uhat,
    glue_pieces,
    graded_order_laws,
    le_r,
    meet_family_sizes,
    morphisms_to_I,
    rho,
    rho_bracket,
    stack_glue,
    unstack_verify,
)
from strategies import grid_points, seeds
from suites import umod_metric
from suites.umod_metric import LAW_SAMPLES

Q = Fraction
I = IntervalModule()


# ── graded order on [0,1] ──

@given(grid_points(), grid_points(), grid_points())
def test_interval_grades_are_truncated_addition(a, b, r):
    assert le_r(I, a, b, r) == (a <= dot_plus(b, r))


def test_interval_distances():
    assert rho(I, Q(3, 4), Q(1, 4)) == Q(1, 2)
    assert rho(I, Q(1, 4), Q(3, 4)) == 0
    assert dist(I, Q(1, 4), Q(3, 4)) == Q(1, 2)


@given(grid_points(), grid_points())
def test_bisection_brackets_the_closed_form(a, b):
    lo, hi = rho_bracket(I, a, b, depth=6)
    r = rho(I, a, b)
    assert lo <= r <= hi
    assert hi - lo <= Q(1, 64)


def test_pl_distance_is_the_sup_gap():
    A = PLModule()
    assert rho(A, identity(), trunc_add(Q(1, 4))) == 0
    assert rho(A, trunc_add(Q(1, 4)), identity()) == Q(1, 4)


# ── Archimedean property ──

def test_interval_is_archimedean():
    pairs = [(Q(1), Q(3, 4)), (Q(1, 2), 0), (Q(1, 16), 0)]
    assert check_archimedean(I, pairs).passed


def test_infinitesimal_point_breaks_archimedean():
    A = InfinitesimalModule()
    assert not A.leq(Q(1), ALMOST_ONE)
    assert A.leq(ALMOST_ONE, Q(1))
    assert le_r(A, Q(1), ALMOST_ONE, Q(1, 1024))
    report = check_archimedean(A, [(Q(1), ALMOST_ONE)])
    assert not report.passed
    assert report.first_failure.witness == {"a": "1", "b": ALMOST_ONE}


def test_infinitesimal_point_under_maps():
    A = InfinitesimalModule()
    assert A.act(identity(), ALMOST_ONE) == ALMOST_ONE
    assert A.apply(trunc_add(Q(1, 4)), ALMOST_ONE) == 1
    assert A.apply(threshold(Q(1, 2)), ALMOST_ONE) == 1


# ── laws on samples ──

@pytest.mark.parametrize("make", [
    lambda: IntervalModule(),
    lambda: IntervalModule(pair_by_name("all")),
    lambda: PLModule(),
    lambda: FunctionModule(FinPoset.chain(3)),
    lambda: FunctionModule(FinPoset.product(FinPoset.chain(2), FinPoset.chain(2))),
])
def test_graded_order_laws(make):
    report = graded_order_laws(make(), np.random.default_rng(7), count=20)
    assert report.passed, report.to_json()


@pytest.mark.parametrize("make", [
    lambda: IntervalModule(),
    lambda: FunctionModule(FinPoset.chain(3)),
    lambda: FunctionModule(FinPoset.product(FinPoset.chain(2), FinPoset.chain(2))),
])
def test_family_meets_include_the_empty_meet(make):
    A = make()
    assert meet_family_sizes(A, 3) == [0, 1, 2, 3]
    report = graded_order_laws(A, np.random.default_rng(3), count=5)
    assert report["family-meets"].ok and not report["family-meets"].skipped


def test_family_meets_follow_the_pair():
    A = IntervalModule(pair_by_name("all"))
    assert meet_family_sizes(A, 3) == [1]
    report = graded_order_laws(A, np.random.default_rng(3), count=5)
    assert report["meets"].skipped and report["family-meets"].ok


class _WrongTop(IntervalModule):
    def top(self):
        return Q(0)

    def sample(self, rng):
        return Q(1, 2)


def test_a_wrong_top_breaks_the_empty_meet():
    report = graded_order_laws(_WrongTop(), np.random.default_rng(0), count=5)
    v = report["family-meets"]
    assert not v.ok
    assert v.witness == {"a": "1/2", "family": [], "r": "0"}


def test_law_battery_defaults_to_a_thousand_samples():
    assert LAW_SAMPLES == 1000
    laws = [args for name, args in umod_metric.items({"seed": 1, "max_size": 2}) if name == "laws"]
    assert laws and all(args["count"] == 1000 for args in laws)


# ── function modules ──

def test_function_module_elements(chain3):
    A = FunctionModule(chain3)
    a = A.element([0, "1/2", 1])
    assert a == (0, Q(1, 2), 1)
    with pytest.raises(PreconditionError, match="top"):
        A.element([0, 1, Q(1, 2)])
    assert A.to_json(a) == {"0": "0", "1": "1/2", "2": "1"}
    assert A.from_json({"0": "0", "1": "1/2", "2": "1"}) == a


def test_function_module_needs_a_lattice():
    with pytest.raises(NotALatticeError):
        FunctionModule(FinPoset.antichain(2))


def test_function_module_checks_meets(diamond):
    A = FunctionModule(diamond)
    # the meet of the atoms is the bottom
    with pytest.raises(PreconditionError, match="meet"):
        A.element([Q(1, 2), 1, 1, 1])
    assert A.element([0, 1, 0, 1]) == (0, 1, 0, 1)


def test_all_posets_pair_asks_for_joins(diamond):
    A = FunctionModule(diamond, pair_by_name("all"))
    # the bottom is the empty join, and the top joins the atoms
    with pytest.raises(PreconditionError):
        A.element([Q(1, 4), Q(1, 2), Q(1, 4), 1])
    assert FunctionModule(diamond).element([Q(1, 4), Q(1, 2), Q(1, 4), 1])
    assert A.element([0, 0, 1, 1]) == (0, 0, 1, 1)


# ── stacking ──

def test_stack_glue_on_the_interval():
    assert stack_glue(I, Q(1, 2), Q(1), Q(1, 2)) == Q(3, 4)
    assert stack_glue(I, Q(1, 2), Q(1, 4), Q(0)) == Q(1, 8)


def test_incompatible_pieces_are_rejected():
    with pytest.raises(IncompatibleError) as e:
        stack_glue(I, Q(1, 2), Q(1, 2), Q(1, 4))
    assert e.value.witness["a"] == "1/2"
    assert e.value.witness["b"] == "1/4"


def test_glue_over_a_partition():
    assert glue_pieces(I, [0, Q(1, 2), 1], [Q(1), Q(1, 2)]) == Q(3, 4)
    assert glue_pieces(I, [0, Q(1, 4), Q(1, 2), 1], [Q(1), Q(1), Q(1, 3)]) == Q(2, 3)


def test_glue_rejects_bad_partitions():
    with pytest.raises(ValueError):
        glue_pieces(I, [Q(1, 2), 1], [Q(1)])
    with pytest.raises(ValueError):
        glue_pieces(I, [0, Q(1, 2), 1], [Q(1)])


@given(grid_points(), grid_points())
def test_unstacking_is_sound(a, b):
    assert unstack_verify(I, a, b, [Q(1, 4), Q(5, 8), 1]).holds


def test_glue_on_functions(chain3):
    A = FunctionModule(chain3)
    a, b = A.element([0, 1, 1]), A.element([0, Q(1, 2), 1])
    c = stack_glue(A, Q(1, 2), a, b)
    assert c == (0, Q(3, 4), 1)


# ── extended action ──

def test_extended_action_of_a_shift():
    assert extend_to_uhat(I, trunc_add(Q(1, 4)), Q(1, 2)) == Q(3, 4)
    assert extend_to_uhat(I, trunc_add(Q(1, 4)), Q(0)) == Q(1, 4)


def test_extended_action_needs_maps_fixing_one():
    with pytest.raises(PreconditionError):
        extend_to_uhat(I, threshold(Q(1, 2)), Q(1, 2))


def test_extended_action_keeps_meets():
    pairs = [(Q(1, 4), Q(3, 4)), (Q(0), Q(1)), (Q(1, 2), Q(1, 2))]
    assert check_uhat_meets(I, trunc_add(Q(1, 8)), pairs).passed


# ── filters and kernels ──

def test_closed_filters_on_the_interval():
    assert closed_invariant_filter(I, [Q(1, 2)]).minima == (0,)
    f = closed_invariant_filter(I, [Q(1)])
    assert f.minima == (1,)
    assert f.contains(Q(1)) and not f.contains(Q(3, 4))


def test_pl_filters_are_not_represented():
    with pytest.raises(UnsupportedInstance):
        closed_invariant_filter(PLModule(), [identity()])
    with pytest.raises(UnsupportedInstance):
        morphisms_to_I(PLModule())


@pytest.mark.parametrize("pair,count", [("directed", 2), ("all", 3)])
def test_interval_kernel_counts(pair, count):
    assert len(morphisms_to_I(IntervalModule(pair_by_name(pair)))) == count


def test_function_kernels_match_elements(diamond, chain3):
    for X in (diamond, chain3):
        assert len(morphisms_to_I(FunctionModule(X))) == X.n
        assert len(morphisms_to_I(FunctionModule(X, pair_by_name("all")))) == X.n


@given(seeds)
def test_kernel_morphisms_send_their_filter_to_one(seed):
    A = FunctionModule(FinPoset.chain(3))
    rng = np.random.default_rng(seed)
    for filt, m in morphisms_to_I(A):
        a = A.sample(rng)
        assert (m(a) == 1) == filt.contains(A.floor(a))
