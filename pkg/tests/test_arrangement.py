import itertools
import json
import random
from fractions import Fraction

import pytest

from arrsheaf import catalog
from arrsheaf.arrangement import (
    Arrangement,
    ArrangementError,
    PreconditionError,
    decompose,
    decone,
    dense_edges,
    essentialize,
    intersection_poset,
    localize,
    parse_arrangement,
    poincare_polynomial,
    proj_euler_char,
    triple,
)
from arrsheaf.exactmath import IntPolynomial, divide_exact, rref

from conftest import lines


def arr(n, *rows):
    return Arrangement.from_rows(n, rows)


def random_arrangement(rng, n, r, central=False, span=3):
    forms = []
    seen = set()
    while len(forms) < r:
        lin = [rng.randint(-span, span) for _ in range(n)]
        if not any(lin):
            continue
        c = 0 if central else rng.randint(-2, 2)
        lead = next(x for x in lin if x)
        key = tuple(Fraction(x, lead) for x in lin + [c])
        if key in seen:
            continue
        seen.add(key)
        forms.append(lin + [c])
    return Arrangement.from_rows(n, forms)


# --- brute-force oracle: every subset, flats compared by point + directions

def _flat(A, S):
    """(point, direction basis) of the intersection of S, or None when empty."""
    n = A.n
    if not S:
        return [Fraction(0)] * n, [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    red, piv = rref([A.forms[i] for i in S])
    if n in piv:
        return None
    p = [Fraction(0)] * n
    for row, c in zip(red, piv):
        p[c] = -row[n]
    V = []
    for f in (c for c in range(n) if c not in piv):
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, c in zip(red, piv):
            v[c] = -row[f]
        V.append(v)
    return p, V


def brute_edges(A):
    """{support: dim} over all subsets, plus Whitney's characteristic polynomial."""
    edges = {}
    whitney = [0] * (A.n + 1)
    for k in range(A.r + 1):
        for S in itertools.combinations(range(A.r), k):
            fl = _flat(A, S)
            if fl is None:
                continue
            p, V = fl
            whitney[len(V)] += (-1) ** k
            sup = frozenset(
                j for j in range(A.r)
                if sum(a * x for a, x in zip(A.forms[j], p)) + A.forms[j][-1] == 0
                and all(sum(a * x for a, x in zip(A.forms[j], v)) == 0 for v in V)
            )
            edges[sup] = len(V)
    return edges, whitney


SAMPLES = [
    catalog.boolean(), catalog.braid(), catalog.cone5(), catalog.cone4(),
    catalog.braid_plus_generic(), catalog.generic_cone4(), catalog.pencil3(),
    catalog.triangle(), catalog.boolean_plus_diagonal(), catalog.x3_cone(),
]


def _samples_with_random():
    rng = random.Random(5)
    out = list(SAMPLES)
    for _ in range(12):
        n = rng.choice([2, 3])
        out.append(random_arrangement(rng, n, rng.randint(2, 6), central=rng.random() < 0.4))
    return out


ALL = _samples_with_random()


# --- parsing

def test_parse_boolean():
    A = parse_arrangement('{"n": 3, "hyperplanes": [["1","0","0","0"],["0","1","0","0"],["0","0","1","0"]]}')
    assert A.r == 3 and A.central and A.essential


def test_parse_rejects_proportional_forms():
    with pytest.raises(ArrangementError):
        parse_arrangement('{"n": 3, "hyperplanes": [[0,0,1,0],[0,0,2,0]]}')


def test_parse_noncentral_nonessential():
    A = parse_arrangement('{"n": 2, "hyperplanes": [["1","0","0"],["1","0","-1"]]}')
    assert not A.central and not A.essential


@pytest.mark.parametrize("text", [
    '{"n": 0, "hyperplanes": [[1]]}',
    '{"n": 2, "hyperplanes": []}',
    '{"n": 2, "hyperplanes": [["1","0.5","0"]]}',
    '{"n": 2, "hyperplanes": [["1","0"]]}',
    '{"n": 2, "hyperplanes": [["0","0","1"]]}',
    '{"n": 2}',
    'not json',
])
def test_parse_errors(text):
    with pytest.raises(ArrangementError):
        parse_arrangement(text)


def test_to_dict_round_trip():
    for A in SAMPLES:
        assert parse_arrangement(json.dumps(A.to_dict())) == A


# --- poset

def test_boolean_poset():
    P = intersection_poset(catalog.boolean())
    assert len(P) == 8
    by_dim = {d: sorted(P.mobius(e) for e in P.edges_of_dim(d)) for d in range(4)}
    assert by_dim == {3: [1], 2: [-1] * 3, 1: [1] * 3, 0: [-1]}
    assert [e.multiplicity for e in P.edges_of_dim(1)] == [2, 2, 2]


def test_single_line_poset():
    P = intersection_poset(lines([1, 0, 0]))
    assert [P.mobius(e) for e in P.edges] == [1, -1]


def test_braid_poset():
    P = intersection_poset(catalog.braid())
    assert len(P) == 15
    mults = sorted(e.multiplicity for e in P.edges_of_dim(1))
    assert mults == [2, 2, 2, 3, 3, 3, 3]
    assert P.mobius(P.bottom) == -6


@pytest.mark.parametrize("A", ALL, ids=repr)
def test_poset_matches_brute_force(A):
    edges, whitney = brute_edges(A)
    P = intersection_poset(A)
    assert {e.support: e.dim for e in P.edges} == edges
    chi = [0] * (A.n + 1)
    for e in P.edges:
        chi[e.dim] += P.mobius(e)
    assert chi == whitney


@pytest.mark.parametrize("A", ALL, ids=repr)
def test_mobius_alternates(A):
    P = intersection_poset(A)
    for W in P.edges:
        assert (-1) ** P.codim(W) * P.mobius(W) > 0


@pytest.mark.parametrize("A", ALL, ids=repr)
def test_mobius_sums_vanish(A):
    P = intersection_poset(A)
    for W in P.edges:
        if W.support:
            assert sum(P.mobius(X) for X in P.interval(W)) == 0


@pytest.mark.parametrize("A", ALL, ids=repr)
def test_support_idempotent(A):
    P = intersection_poset(A)
    for W in P.edges:
        if W.support:
            edges, _ = brute_edges(A.subarrangement(sorted(W.support)))
            # the intersection of the support is contained in nothing else of A
            assert P.edge(W.support) is W


def test_poincare_examples():
    assert poincare_polynomial(catalog.boolean()) == IntPolynomial([1, 3, 3, 1])
    assert poincare_polynomial(catalog.cone5()) == IntPolynomial([1, 5, 8, 4])
    for m in range(1, 7):
        expected = IntPolynomial([1, 1]) * IntPolynomial([1, m - 1])
        assert poincare_polynomial(catalog.pencil(m)) == expected


@pytest.mark.parametrize("A", [a for a in ALL if a.central], ids=repr)
def test_central_poincare_divisible(A):
    divide_exact(poincare_polynomial(A), IntPolynomial([1, 1]))


@pytest.mark.parametrize("A", [a for a in ALL if a.r >= 2], ids=repr)
def test_deletion_restriction_on_poincare(A):
    pi = poincare_polynomial(A)
    for i in range(A.r):
        tri = triple(A, i)
        rhs = poincare_polynomial(tri.deleted) + IntPolynomial([0, 1]) * poincare_polynomial(tri.restricted)
        assert pi == rhs


def test_proj_euler_char_examples():
    A = catalog.boolean()
    P = intersection_poset(A)
    assert proj_euler_char(A, P.edge({0})) == 1
    assert proj_euler_char(A, P.bottom) == 0
    B = catalog.braid()
    Q = intersection_poset(B)
    for X in Q.edges_of_dim(1):
        assert proj_euler_char(B, X) == 2 - X.multiplicity
    with pytest.raises(PreconditionError):
        proj_euler_char(A, P.ambient)


def test_dense_edges_examples():
    A = catalog.boolean()
    assert sorted(e.dim for e in dense_edges(A)) == [2, 2, 2]
    T = catalog.triangle()
    assert sorted(e.dim for e in dense_edges(T)) == [1, 1, 1]
    B = catalog.braid()
    D = dense_edges(B)
    assert sorted((e.dim, e.multiplicity) for e in D) == [(0, 6)] + [(1, 3)] * 4 + [(2, 1)] * 6
    assert proj_euler_char(B, intersection_poset(B).bottom) == 2


def test_decompose_examples():
    assert decompose(catalog.boolean()) == [frozenset({0}), frozenset({1}), frozenset({2})]
    assert decompose(catalog.boolean_plus_diagonal()) == [frozenset({0, 1, 2}), frozenset({3})]
    assert decompose(catalog.braid()) == [frozenset(range(6))]
    with pytest.raises(PreconditionError):
        decompose(catalog.triangle())


def test_decompose_agrees_with_euler_criterion():
    rng = random.Random(17)
    tested = 0
    for A in SAMPLES + [random_arrangement(rng, 3, rng.randint(3, 7), central=True) for _ in range(30)]:
        if not (A.central and A.essential):
            continue
        P = intersection_poset(A)
        single = len(decompose(A)) == 1
        assert single == (proj_euler_char(A, P.bottom) != 0)
        tested += 1
    assert tested > 20


def test_triple_boolean():
    tri = triple(catalog.boolean(), 2)
    assert tri.deleted.r == 2 and tri.restricted.n == 2 and tri.restricted.r == 2
    assert tri.trace == ((0,), (1,))


def test_triple_cone5_merges_traces():
    tri = triple(catalog.cone5(), 0)
    assert tri.restricted.r == 2
    assert tri.trace == ((1, 2), (3, 4))
    assert intersection_poset(tri.restricted).bottom is not None


def test_triple_pencil():
    tri = triple(catalog.pencil3(), 1)
    assert tri.deleted.central and tri.deleted.r == 2


def test_localize_boolean_line():
    A = catalog.boolean()
    loc = localize(A, intersection_poset(A).edge({0, 1}))
    assert loc.A_W.n == 2 and loc.A_W.r == 2 and loc.A_W.central
    assert loc.A_up.n == 1 and loc.trace == ((2,),)


def test_localize_braid_triple_line():
    B = catalog.braid()
    P = intersection_poset(B)
    for X in P.edges_of_dim(1):
        loc = localize(B, X)
        assert loc.A_W.n == 2 and loc.A_W.r == X.multiplicity
        assert loc.A_up.r == 1 and sorted(sum(loc.trace, ())) == sorted(set(range(6)) - X.support)


def test_localize_origin_and_ambient():
    A = catalog.cone5()
    P = intersection_poset(A)
    loc = localize(A, P.bottom)
    assert poincare_polynomial(loc.A_W) == poincare_polynomial(A)
    assert loc.A_up.n == 0 and loc.A_up.r == 0
    amb = localize(A, P.ambient)
    assert amb.A_W.r == 0 and amb.A_up == A


@pytest.mark.parametrize("A", ALL, ids=repr)
def test_localization_interval_isomorphism(A):
    P = intersection_poset(A)
    for W in P.edges:
        if not W.support:
            continue
        loc = localize(A, W)
        assert loc.A_W.central and loc.A_W.essential
        Q = intersection_poset(loc.A_W)
        sup = sorted(W.support)
        interval = {X.support: P.mobius(X) for X in P.interval(W)}
        mapped = {frozenset(sup[k] for k in Y.support): Q.mobius(Y) for Y in Q.edges}
        assert mapped == interval


def test_essentialize():
    A = arr(3, [1, 0, 0, 0], [1, 0, 0, -1], [0, 1, 0, 0])
    E = essentialize(A)
    assert E.n == 2 and E.essential
    assert poincare_polynomial(E) == poincare_polynomial(A)


@pytest.mark.parametrize("A", [a for a in ALL if a.central and a.essential and a.n == 3], ids=repr)
def test_decone_poincare(A):
    expected = divide_exact(poincare_polynomial(A), IntPolynomial([1, 1]))
    for k in range(A.r):
        B = decone(A, k)
        assert B.n == 2 and B.r == A.r - 1
        assert poincare_polynomial(B) == expected
