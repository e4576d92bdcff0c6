import itertools
import random
from fractions import Fraction

import pytest

from arrsheaf import catalog
from arrsheaf.arrangement import PreconditionError, decone, poincare_polynomial
from arrsheaf.localsys import LocalSystem
from arrsheaf.salvetti import (
    complement_betti_via_cone,
    coned_cohomology,
    face_structure,
    twisted_betti,
    twisted_complex,
)

from conftest import LS, all_systems, lines, random_systems
from test_arrangement import random_arrangement


def plane_arrangements():
    rng = random.Random(11)
    out = [
        lines([1, 0, 0]),
        lines([1, 0, 0], [0, 1, 0]),
        lines([1, 0, 0], [1, 0, -1]),
        catalog.triangle(),
        lines([1, 0, 0], [0, 1, 0], [1, 1, 0]),
        lines([1, 0, 0], [0, 1, 0], [1, -1, 0], [1, 1, -2]),
        decone(catalog.braid(), 0),
        decone(catalog.braid(), 3),
        decone(catalog.cone5(), 0),
        decone(catalog.braid_plus_generic(), 6),
        decone(catalog.x3_cone(), 2),
    ]
    out += [random_arrangement(rng, 2, rng.randint(2, 6)) for _ in range(10)]
    return out


PLANE = plane_arrangements()


def _local_one_dim(a) -> tuple[int, int]:
    return (1, 1) if a == 0 else (0, 0)


@pytest.mark.parametrize("A,counts", [
    (lines([1, 0, 0]), (0, 1, 2)),
    (lines([1, 0, 0], [0, 1, 0]), (1, 4, 4)),
    (catalog.triangle(), (3, 9, 7)),
    (lines([1, 0, 0], [1, 0, -1]), (0, 2, 3)),
])
def test_face_counts(A, counts):
    assert face_structure(A).counts == counts


@pytest.mark.parametrize("A", PLANE, ids=repr)
def test_untwisted_betti_is_poincare(A):
    pi = poincare_polynomial(A).to_list()
    pi += [0] * (3 - len(pi))
    assert list(twisted_betti(A, LocalSystem.trivial(A.r))) == pi


@pytest.mark.parametrize("A", PLANE, ids=repr)
def test_boundary_squares_to_zero(A):
    rng = random.Random(A.r)
    for L in random_systems(rng, A.r, 3):
        assert twisted_complex(A, L).composite_is_zero()


def test_euler_characteristic_random_systems():
    rng = random.Random(3)
    checked = 0
    for A in PLANE:
        chi = poincare_polynomial(A)(-1)
        for L in random_systems(rng, A.r, 5):
            b = twisted_betti(A, L)
            assert b[0] - b[1] + b[2] == chi
            checked += 1
    assert checked >= 50


def test_crossing_lines_kunneth():
    A = lines([1, 0, 0], [0, 1, 0])
    for L in all_systems(2, (1, 2, 3)):
        u, v = (_local_one_dim(a) for a in L.exponents)
        expected = (u[0] * v[0], u[0] * v[1] + u[1] * v[0], u[1] * v[1])
        assert twisted_betti(A, L) == expected


def test_parallel_lines():
    A = lines([1, 0, 0], [1, 0, -1])
    assert twisted_betti(A, LS("0,0")) == (1, 2, 0)
    assert twisted_betti(A, LS("1/2,1/2")) == (0, 1, 0)


def test_triangle_examples():
    T = catalog.triangle()
    assert twisted_betti(T, LocalSystem.trivial(3)) == (1, 3, 3)
    assert twisted_betti(T, LS("1/2,1/2,0")) == (0, 0, 1)


def test_generic_systems_concentrate_in_top_degree():
    # when no vertex of multiplicity >= 3 and no line has trivial monodromy,
    # and the monodromy at infinity is non-trivial, only H^2 survives
    rng = random.Random(8)
    for A in PLANE:
        chi = poincare_polynomial(A)(-1)
        if not A.essential:
            continue
        for L in random_systems(rng, A.r, 6, denominators=(5,)):
            if any(a == 0 for a in L.exponents) or sum(L.exponents) % 1 == 0:
                continue
            fs = face_structure(A)
            heavy = [v for v in fs.vertices if v.count(0) >= 3]
            if any(sum(L[j] for j, x in enumerate(v) if x == 0) % 1 == 0 for v in heavy):
                continue
            # parallel classes meet the line at infinity in a point of multiplicity >= 3
            classes = {}
            for j, f in enumerate(A.forms):
                lead = f[0] if f[0] else f[1]
                classes.setdefault((f[0] / lead, f[1] / lead), []).append(j)
            at_infinity = -sum(L.exponents)
            if any(len(c) > 1 and (sum(L[j] for j in c) + at_infinity) % 1 == 0
                   for c in classes.values()):
                continue
            assert twisted_betti(A, L) == (0, 0, chi)


def test_perturbation_invariance():
    # moving lines without changing the combinatorics keeps every Betti number
    A = lines([1, 0, 0], [0, 1, 0], [1, 1, -1], [1, -1, 0])
    B = lines([2, 0, -1], [0, 3, 1], [1, 1, -1], [2, 3, 0])
    assert poincare_polynomial(A) == poincare_polynomial(B)
    rng = random.Random(1)
    for L in random_systems(rng, 4, 20):
        assert twisted_betti(A, L) == twisted_betti(B, L)


def test_decone_choice_invariance():
    B = catalog.braid()
    for s in (Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)):
        L = LocalSystem.equal(6, s)
        values = {tuple(coned_cohomology(B, L, q, k).value for q in range(3)) for k in range(6)}
        assert len(values) == 1


def test_braid_eigenspaces():
    B = catalog.braid()
    assert [coned_cohomology(B, LocalSystem.equal(6, Fraction(1, 3)), q).value for q in (1, 2)] == [1, 3]
    assert [coned_cohomology(B, LocalSystem.equal(6, Fraction(1, 2)), q).value for q in (1, 2)] == [0, 2]


def test_central_complement_via_cone():
    assert complement_betti_via_cone(catalog.boolean(), LocalSystem.trivial(3)) == [1, 3, 3, 1]
    assert complement_betti_via_cone(catalog.pencil(4), LocalSystem.trivial(4)) == [1, 4, 3]
    assert complement_betti_via_cone(catalog.boolean(), LS("1/2,1/2,1/3")) == [0, 0, 0, 0]


def test_pencil_top_dim():
    for m in range(2, 6):
        A = catalog.pencil(m)
        for L in all_systems(m, (1, 2, 3)):
            if L.is_constant or sum(L.exponents) % 1:
                continue
            assert complement_betti_via_cone(A, L)[2] == m - 2


def test_coned_preconditions():
    with pytest.raises(PreconditionError):
        coned_cohomology(catalog.triangle(), LS("0,0,0"), 1)
    with pytest.raises(PreconditionError):
        coned_cohomology(catalog.boolean(), LS("1/2,0,0"), 1)
    with pytest.raises(PreconditionError):
        twisted_betti(catalog.boolean(), LS("0,0,0"))
