"""Affine hyperplane arrangements over Q and their intersection lattices."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple, Sequence

from .exactmath import (
    IntPolynomial,
    NotDivisibleError,
    divide_exact,
    format_rational,
    parse_rational,
    reduce_against,
    rref,
)


class ArrangementError(ValueError):
    """Malformed or invalid arrangement input."""


class PreconditionError(ValueError):
    """An operation was called outside its domain (non-central, non-essential, ...)."""


def _normalize(form: Sequence[Fraction]) -> tuple[Fraction, ...]:
    lead = next((c for c in form[:-1] if c != 0), None)
    if lead is None:
        return tuple(form)
    return tuple(c / lead for c in form)


@dataclass(frozen=True)
class Arrangement:
    """Distinct hyperplanes ``c_1 x_1 + ... + c_n x_n + c_0 = 0`` in C^n.

    Each form is stored as ``(c_1, ..., c_n, c_0)``.  The empty arrangement
    (and n = 0) is allowed internally; :func:`parse_arrangement` enforces
    ``n >= 1`` and ``r >= 1`` for user input.
    """

    n: int
    forms: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        forms = tuple(tuple(Fraction(c) for c in f) for f in self.forms)
        object.__setattr__(self, "forms", forms)
        if self.n < 0:
            raise ArrangementError("negative ambient dimension")
        seen = {}
        for i, f in enumerate(forms):
            if len(f) != self.n + 1:
                raise ArrangementError(
                    f"hyperplane {i} has {len(f)} entries, expected {self.n + 1}"
                )
            if not any(f[:-1]):
                raise ArrangementError(f"hyperplane {i} has a zero normal vector")
            key = _normalize(f)
            if key in seen:
                raise ArrangementError(
                    f"hyperplanes {seen[key]} and {i} are proportional"
                )
            seen[key] = i

    @classmethod
    def from_rows(cls, n: int, rows: Iterable[Sequence]) -> "Arrangement":
        return cls(n, tuple(tuple(parse_rational(c) for c in row) for row in rows))

    @property
    def r(self) -> int:
        return len(self.forms)

    @property
    def normals(self) -> list[tuple[Fraction, ...]]:
        return [f[:-1] for f in self.forms]

    @cached_property
    def rank(self) -> int:
        return len(rref(self.normals)[1]) if self.forms else 0

    @cached_property
    def central(self) -> bool:
        if not self.forms:
            return True
        _, piv = rref(self.forms)
        return self.n not in piv

    @property
    def essential(self) -> bool:
        return self.rank == self.n

    @property
    def real(self) -> bool:
        # rational coefficients are always real; kept for the oracle's contract
        return True

    def linear_part(self) -> "Arrangement":
        return Arrangement(self.n, tuple(f[:-1] + (Fraction(0),) for f in self.forms))

    def delete(self, i: int) -> "Arrangement":
        return Arrangement(self.n, self.forms[:i] + self.forms[i + 1 :])

    def subarrangement(self, indices: Iterable[int]) -> "Arrangement":
        return Arrangement(self.n, tuple(self.forms[i] for i in indices))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "hyperplanes": [[format_rational(c) for c in f] for f in self.forms],
        }

    def __repr__(self):
        return f"Arrangement(n={self.n}, r={self.r})"


def parse_arrangement(text: str) -> Arrangement:
    """Parse the JSON arrangement format ``{"n": int, "hyperplanes": [[c1..cn, c0], ...]}``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ArrangementError(f"invalid JSON: {exc}") from None
    return arrangement_from_dict(data)


def arrangement_from_dict(data) -> Arrangement:
    if not isinstance(data, dict) or "n" not in data or "hyperplanes" not in data:
        raise ArrangementError('expected an object with keys "n" and "hyperplanes"')
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ArrangementError(f"ambient dimension must be a positive integer, got {n!r}")
    rows = data["hyperplanes"]
    if not isinstance(rows, list) or not rows:
        raise ArrangementError("an arrangement needs at least one hyperplane")
    parsed = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise ArrangementError(f"hyperplane {i} is not a list")
        try:
            parsed.append(tuple(parse_rational(c) for c in row))
        except ValueError as exc:
            raise ArrangementError(f"hyperplane {i}: {exc}") from None
    return Arrangement(n, tuple(parsed))


def load_arrangement(path) -> Arrangement:
    with open(path, encoding="utf-8") as fh:
        return parse_arrangement(fh.read())


# ---------------------------------------------------------------------------
# intersection lattice


@dataclass(frozen=True)
class Edge:
    """A flat, identified by its support ``{i : W ⊆ H_i}``."""

    support: frozenset
    dim: int = field(compare=False)
    id: int = field(default=-1, compare=False)

    @property
    def multiplicity(self) -> int:
        return len(self.support)

    def sorted_support(self) -> tuple[int, ...]:
        return tuple(sorted(self.support))


class EdgePoset:
    """All edges of an arrangement with containments and Möbius values."""

    def __init__(self, A: Arrangement, edges: list[Edge], mobius: dict):
        self.arrangement = A
        self.edges = edges
        self._by_support = {e.support: e for e in edges}
        self._mobius = mobius

    def __iter__(self):
        return iter(self.edges)

    def __len__(self):
        return len(self.edges)

    @property
    def ambient(self) -> Edge:
        return self.edges[0]

    @property
    def bottom(self) -> Edge:
        """The center, when the arrangement is central."""
        return self.edges[-1] if self.arrangement.central else None

    def edge(self, support: Iterable[int]) -> Edge:
        return self._by_support[frozenset(support)]

    def codim(self, W: Edge) -> int:
        return self.arrangement.n - W.dim

    def mobius(self, W: Edge) -> int:
        return self._mobius[W.support]

    def contains(self, X: Edge, W: Edge) -> bool:
        """True iff W ⊆ X."""
        return X.support <= W.support

    def interval(self, W: Edge) -> list[Edge]:
        """Edges X with W ⊆ X (including C^n and W itself)."""
        return [X for X in self.edges if X.support <= W.support]

    def edges_of_dim(self, d: int) -> list[Edge]:
        return [e for e in self.edges if e.dim == d]

    def to_dict(self) -> dict:
        A = self.arrangement
        return {
            "edges": [
                {
                    "id": e.id,
                    "dim": e.dim,
                    "support": e.sorted_support(),
                    "mobius": self.mobius(e),
                }
                for e in self.edges
            ],
            "poincare": poincare_polynomial(A).to_list(),
            "central": A.central,
            "essential": A.essential,
            "dense": sorted(e.id for e in dense_edges(A)),
        }


def _augmented_basis(A: Arrangement, support) -> tuple[list, list[int]]:
    return rref([A.forms[i] for i in sorted(support)])


def _closure(A: Arrangement, support) -> tuple[frozenset, int] | None:
    """Support and dimension of the intersection of ``support``, or None if empty."""
    basis, piv = _augmented_basis(A, support)
    if A.n in piv:
        return None
    closed = frozenset(
        j for j in range(A.r) if j in support or not any(reduce_against(A.forms[j], basis, piv))
    )
    return closed, A.n - len(piv)


@lru_cache(maxsize=512)
def intersection_poset(A: Arrangement) -> EdgePoset:
    found: dict[frozenset, int] = {frozenset(): A.n}
    frontier = []
    for i in range(A.r):
        sup, d = _closure(A, {i})
        if sup not in found:
            found[sup] = d
            frontier.append(sup)
    while frontier:
        nxt = []
        for sup in frontier:
            for j in range(A.r):
                if j in sup:
                    continue
                res = _closure(A, sup | {j})
                if res is None or res[0] in found:
                    continue
                found[res[0]] = res[1]
                nxt.append(res[0])
        frontier = nxt
    order = sorted(found, key=lambda s: (-found[s], tuple(sorted(s))))
    edges = [Edge(s, found[s], k) for k, s in enumerate(order)]
    mobius: dict[frozenset, int] = {}
    for e in edges:  # dims descending, so every X ⊋ W comes first
        if not e.support:
            mobius[e.support] = 1
        else:
            mobius[e.support] = -sum(
                mobius[x.support]
                for x in edges
                if x.dim > e.dim and x.support < e.support
            )
    return EdgePoset(A, edges, mobius)


def poincare_polynomial(A: Arrangement, W: Edge | None = None) -> IntPolynomial:
    """π(A, t); with W given, the Poincaré polynomial of the localization A_W."""
    P = intersection_poset(A)
    coeffs = [0] * (A.n + 1)
    for X in P.edges if W is None else P.interval(W):
        coeffs[A.n - X.dim] += abs(P.mobius(X))
    return IntPolynomial(coeffs)


def proj_euler_char(A: Arrangement, W: Edge) -> int:
    """χ of the projectivized complement of the localization A_W."""
    if not W.support:
        raise PreconditionError("the projective Euler characteristic needs W ≠ C^n")
    pi = poincare_polynomial(A, W)
    try:
        reduced = divide_exact(pi, IntPolynomial([1, 1]))
    except NotDivisibleError:
        raise ArithmeticError(f"(1+t) does not divide {pi}; the lattice code is broken") from None
    return reduced(-1)


def dense_edges(A: Arrangement) -> list[Edge]:
    P = intersection_poset(A)
    return [W for W in P.edges if W.support and proj_euler_char(A, W) != 0]


def is_dense(A: Arrangement, W: Edge) -> bool:
    return bool(W.support) and proj_euler_char(A, W) != 0


def decompose(A: Arrangement) -> list[frozenset]:
    """Connected components of the matroid of normal vectors.

    Uses the fundamental circuits of the greedy basis taken in index order;
    two elements lie in a common circuit iff they lie in a common component.
    """
    if not A.central:
        raise PreconditionError("decompose expects a central arrangement")
    parent = list(range(A.r))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    basis_idx: list[int] = []
    for j, v in enumerate(A.normals):
        rows = [A.normals[b] for b in basis_idx]
        coeffs = _express(rows, v)
        if coeffs is None:
            basis_idx.append(j)
            continue
        for b, c in zip(basis_idx, coeffs):
            if c != 0:
                parent[find(b)] = find(j)
    comps: dict[int, set] = {}
    for i in range(A.r):
        comps.setdefault(find(i), set()).add(i)
    return sorted((frozenset(c) for c in comps.values()), key=min)


def _express(rows, v) -> list[Fraction] | None:
    """Coefficients writing v in terms of independent rows, or None if v is independent."""
    if not rows:
        return None if any(v) else []
    k = len(rows)
    # solve sum c_k rows_k = v via rref of the transposed augmented system
    n = len(v)
    aug = [[rows[b][i] for b in range(k)] + [v[i]] for i in range(n)]
    red, piv = rref(aug)
    if k in piv:
        return None
    coeffs = [Fraction(0)] * k
    for row, c in zip(red, piv):
        coeffs[c] = row[k]
    return coeffs


def essentialize(A: Arrangement) -> Arrangement:
    """Quotient by the directions common to all hyperplanes (keeps index order)."""
    if not A.forms:
        return Arrangement(0, ())
    basis, piv = rref(A.normals)
    forms = tuple(tuple(f[c] for c in piv) + (f[-1],) for f in A.forms)
    return Arrangement(len(piv), forms)


class Localization(NamedTuple):
    """A_W (central essential, hyperplanes in sorted-support order), A^W and its trace map.

    ``trace[k]`` is the tuple of indices of A whose intersection with W is the
    k-th hyperplane of A^W.
    """

    A_W: Arrangement
    A_up: Arrangement
    trace: tuple[tuple[int, ...], ...]
    support: tuple[int, ...]


def _parametrize(A: Arrangement, support) -> tuple[list[Fraction], list[list[Fraction]]]:
    """A point p and a basis V of directions with W = p + span(V)."""
    n = A.n
    if not support:
        return [Fraction(0)] * n, [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    red, piv = rref([A.forms[i] for i in sorted(support)])
    if n in piv:
        raise PreconditionError("support has empty intersection")
    p = [Fraction(0)] * n
    for row, c in zip(red, piv):
        p[c] = -row[n]
    free = [c for c in range(n) if c not in piv]
    V = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, c in zip(red, piv):
            v[c] = -row[f]
        V.append(v)
    return p, V


def _restrict_forms(A: Arrangement, indices, p, V):
    groups: dict[tuple, list[int]] = {}
    order = []
    for j in indices:
        f = A.forms[j]
        lin = tuple(sum(f[i] * v[i] for i in range(A.n)) for v in V)
        const = sum(f[i] * p[i] for i in range(A.n)) + f[-1]
        if not any(lin):
            continue  # parallel to W: empty intersection (containment is excluded)
        key = _normalize(lin + (const,))
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(j)
    forms = tuple(order)
    trace = tuple(tuple(groups[k]) for k in order)
    return Arrangement(len(V), forms), trace


def localize(A: Arrangement, W: Edge) -> Localization:
    support = tuple(sorted(W.support))
    A_W = essentialize(Arrangement(A.n, tuple(A.forms[i][:-1] + (Fraction(0),) for i in support)))
    p, V = _parametrize(A, W.support)
    rest = [j for j in range(A.r) if j not in W.support]
    A_up, trace = _restrict_forms(A, rest, p, V)
    return Localization(A_W, A_up, trace, support)


class TripleDecomposition(NamedTuple):
    deleted: Arrangement
    restricted: Arrangement
    trace: tuple[tuple[int, ...], ...]
    deleted_index: int
    kept: tuple[int, ...]  # indices of A that survive in the deletion, in order


def triple(A: Arrangement, i: int) -> TripleDecomposition:
    if A.r < 2:
        raise PreconditionError("deletion-restriction needs at least two hyperplanes")
    if not 0 <= i < A.r:
        raise PreconditionError(f"hyperplane index {i} out of range")
    loc = localize(A, intersection_poset(A).edge({i}))
    kept = tuple(j for j in range(A.r) if j != i)
    return TripleDecomposition(A.delete(i), loc.A_up, loc.trace, i, kept)


def decone(A: Arrangement, k: int = 0) -> Arrangement:
    """Affine arrangement in C^(n-1) whose complement is the projectivized complement.

    Hyperplane ``k`` is sent to infinity; the remaining hyperplanes keep their
    relative order.
    """
    if not A.central:
        raise PreconditionError("deconing needs a central arrangement")
    if not A.essential:
        raise PreconditionError("deconing needs an essential arrangement")
    lin = [f[:-1] for f in A.forms]
    ak = lin[k]
    norm2 = sum(c * c for c in ak)
    p = [c / norm2 for c in ak]
    # kernel basis of ak
    red, piv = rref([ak])
    free = [c for c in range(A.n) if c not in piv]
    V = []
    for f in free:
        v = [Fraction(0)] * A.n
        v[f] = Fraction(1)
        v[piv[0]] = -red[0][f]
        V.append(v)
    forms = []
    for i, a in enumerate(lin):
        if i == k:
            continue
        coeffs = tuple(sum(a[t] * v[t] for t in range(A.n)) for v in V)
        const = sum(a[t] * p[t] for t in range(A.n))
        forms.append(coeffs + (const,))
    return Arrangement(A.n - 1, tuple(forms))
