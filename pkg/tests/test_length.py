import random
from fractions import Fraction

import pytest

from arrsheaf import catalog
from arrsheaf.arrangement import PreconditionError, intersection_poset, poincare_polynomial
from arrsheaf.length import (
    constant_length,
    exact_length,
    is_length_one,
    is_length_two,
    length_Wcirc,
    lower_bound,
)
from arrsheaf.localcohom import Strategy, local_top_dim
from arrsheaf.localsys import LocalSystem, in_W_circ
from arrsheaf.provenance import Provenance
from arrsheaf.salvetti import top_cohomology_via_cone, twisted_betti

from conftest import LS, all_systems, eq, lines, random_systems

CENTRAL3 = [
    catalog.boolean(), catalog.braid(), catalog.cone4(), catalog.cone5(),
    catalog.generic_cone4(), catalog.boolean_plus_diagonal(), catalog.x3_cone(),
]
PLANE = [catalog.triangle(), catalog.pencil3(), lines([1, 0, 0], [0, 1, 0], [1, 1, -1], [1, -1, 0])]


def test_constant_length_examples():
    assert constant_length(catalog.boolean()) == 8
    assert constant_length(catalog.braid()) == 24
    assert exact_length(catalog.braid(), LocalSystem.trivial(6)).exact == 24


@pytest.mark.parametrize("A", PLANE + CENTRAL3, ids=repr)
def test_constant_length_is_total_betti(A):
    # the sum of |μ| equals π(1); for plane arrangements compare with the oracle
    assert constant_length(A) == poincare_polynomial(A)(1)
    if A.n == 2:
        assert constant_length(A) == sum(twisted_betti(A, LocalSystem.trivial(A.r)))


def test_cone5_strict_inequality():
    A = catalog.cone5()
    L = LS("0,1/2,1/2,1/2,1/2")
    assert lower_bound(A, L).lower == 5
    rep = exact_length(A, L, all_orders=True)
    assert rep.exact == 6
    step = rep.steps[0]
    assert (step["deleted_length"], step["restricted_length"]) == (2, 4)
    assert step["difference"] == 1
    assert step["terms"] == {"h3_deleted": 1, "h2_restricted": 1, "h3": 1, "difference": 1}
    assert sum(f.multiplicity for f in rep.factors) == 6
    assert any(f.extra and f.edge.dim == 0 for f in rep.factors)


def test_difference_terms_match_oracle():
    rng = random.Random(4)
    checked = 0
    for A in CENTRAL3:
        for L in random_systems(rng, A.r, 25, denominators=(1, 1, 2, 3)):
            rep = exact_length(A, L)
            for step in rep.steps[:1]:
                terms = step.get("terms")
                if terms is None:
                    continue
                assert terms["h3"] == top_cohomology_via_cone(A, L).value
                checked += 1
    assert checked >= 20


@pytest.mark.parametrize("s,expected", [
    ("1/3", 8), ("1/2", 3), ("1/6", 3), ("1/5", 1), ("0", 24),
])
def test_braid_equal_monodromy(s, expected):
    assert exact_length(catalog.braid(), eq(6, s)).exact == expected


@pytest.mark.parametrize("s,expected", [("1/3", 5), ("1/7", 7), ("1/2", 1)])
def test_seven_plane_cone(s, expected):
    assert exact_length(catalog.braid_plus_generic(), eq(7, s)).exact == expected


def test_sandwich_and_strict_upper():
    rng = random.Random(12)
    for A in CENTRAL3 + PLANE:
        top = constant_length(A)
        for L in random_systems(rng, A.r, 15, denominators=(1, 2, 3)):
            rep = exact_length(A, L)
            assert rep.lower <= rep.exact <= top
            assert (rep.exact == top) == L.is_constant


def test_plane_exact_equals_lower():
    for A in PLANE:
        for L in all_systems(A.r, (1, 2, 3)):
            rep = exact_length(A, L)
            assert rep.exact == rep.lower and not rep.steps


def test_gap_bound():
    rng = random.Random(2)
    for A in CENTRAL3:
        for L in random_systems(rng, A.r, 15, denominators=(1, 1, 2, 3)):
            rep = exact_length(A, L)
            assert rep.gap_bound == len(L.zeros())
            assert rep.exact - rep.lower <= rep.gap_bound


def test_all_orders_agree():
    rng = random.Random(6)
    for A in CENTRAL3:
        for L in random_systems(rng, A.r, 8, denominators=(1, 1, 2, 3)):
            rep = exact_length(A, L, all_orders=True)
            assert rep.orders_checked == L.zeros()


def test_factors_sum_to_length():
    rng = random.Random(9)
    for A in CENTRAL3 + PLANE:
        for L in random_systems(rng, A.r, 10, denominators=(1, 2, 3)):
            rep = exact_length(A, L)
            assert sum(f.multiplicity for f in rep.factors) == rep.exact


def test_length_one_criterion_boolean():
    A = catalog.boolean()
    for L in all_systems(3):
        assert is_length_one(A, L) == (exact_length(A, L).exact == 1)


def test_length_one_criterion_braid():
    A = catalog.braid()
    rng = random.Random(1)
    for L in random_systems(rng, 6, 60, denominators=(1, 2, 3, 6)):
        assert is_length_one(A, L) == (exact_length(A, L).exact == 1)


def test_length_two_examples():
    A = catalog.cone4()
    ok, W, pair = is_length_two(A, eq(4, "1/2"))
    assert ok and W.dim == 0
    assert [f.edge.dim for f in pair] == [3, 0]
    assert exact_length(A, eq(4, "1/2")).exact == 2
    ok, W, _ = is_length_two(catalog.boolean(), LS("0,1/2,1/2"))
    assert ok and W.support == frozenset({0})
    ok, W, _ = is_length_two(catalog.pencil3(), eq(3, "1/3"))
    assert ok and exact_length(catalog.pencil3(), eq(3, "1/3")).exact == 2


def test_length_two_criterion_sweep():
    for A in [catalog.boolean(), catalog.cone4(), catalog.pencil3()]:
        for L in all_systems(A.r, (1, 2, 3)):
            ok, _, _ = is_length_two(A, L)
            if ok:
                assert exact_length(A, L).exact == 2


def test_length_in_open_stratum():
    rng = random.Random(5)
    for A in [catalog.braid(), catalog.cone4(), catalog.boolean()]:
        P = intersection_poset(A)
        for L in random_systems(rng, A.r, 40, denominators=(1, 2, 3)):
            for W in P.edges:
                if W.support and in_W_circ(A, L, W):
                    assert length_Wcirc(A, L, W) == exact_length(A, L).exact


def test_interval_without_oracle_contains_truth():
    rng = random.Random(13)
    strat = Strategy(use_oracle=False)
    seen_gap = False
    for A in [catalog.braid(), catalog.x3_cone(), catalog.cone5()]:
        systems = random_systems(rng, A.r, 20, denominators=(1, 2, 3))
        if A.r == 6:
            systems += [LS("0,1/3,1/3,1/2,1/2,1/3"), LS("0,1/3,1/3,1/3,2/3,1/3")]
        for L in systems:
            truth = exact_length(A, L).exact
            rep = exact_length(A, L, strat)
            assert rep.lower <= truth <= rep.upper
            if rep.exact is None:
                seen_gap = True
                assert rep.undetermined
            else:
                assert rep.exact == truth
    assert seen_gap


def test_user_dims_fill_gaps():
    A = catalog.braid()
    L = LS("1/2,1/2,0,0,1/2,1/2")
    strat = Strategy(use_oracle=False)
    P = intersection_poset(A)
    if local_top_dim(A, L, strat).known:
        pytest.skip("a rule decides this case")
    truth = local_top_dim(A, L).value
    rep = lower_bound(A, L, strat, {P.bottom.support: truth})
    assert rep.exact == lower_bound(A, L).exact
    origin = next(d for d in rep.local_dims if d["edge"] == P.bottom.id)
    assert origin["provenance"] == Provenance.USER.value


def test_preconditions():
    with pytest.raises(PreconditionError):
        exact_length(lines([1, 0, 0], [1, 0, -1]), LS("0,0"))
    with pytest.raises(PreconditionError):
        is_length_one(catalog.triangle(), LS("0,0,0"))
