"""Characteristic cycles, Euler characteristics and IH Betti numbers.

Conventions.  A characteristic cycle is a non-negative combination of the
conormal varieties of edges, stored as edge-support -> coefficient.  IH vectors
list ``IH^0, ..., IH^n`` of C^n.  The Euler characteristic of the IC complex is
``Σ (-1)^i IH^i`` for n = 2 and ``-Σ (-1)^i IH^i`` for n = 3 (the sign of the
shift by n).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .arrangement import (
    Arrangement,
    Edge,
    PreconditionError,
    intersection_poset,
    localize,
)
from .length import Factor, exact_length
from .localcohom import (
    beta3,
    eigenspace_dims,
    max_line_multiplicity,
    n3,
)
from .localsys import LocalSystem, check_length
from .provenance import LocalDim, Provenance, combine_provenance
from .salvetti import twisted_betti


class UndeterminedError(ValueError):
    """A required cohomology dimension could not be determined."""


@dataclass
class CharCycle:
    arrangement: Arrangement
    coeffs: dict = field(default_factory=dict)  # support frozenset -> int

    def coefficient(self, W: Edge) -> int:
        return self.coeffs.get(W.support, 0)

    def add(self, W: Edge, k: int) -> None:
        if k:
            self.coeffs[W.support] = self.coeffs.get(W.support, 0) + k

    def __add__(self, other: "CharCycle") -> "CharCycle":
        out = CharCycle(self.arrangement, dict(self.coeffs))
        for s, k in other.coeffs.items():
            out.coeffs[s] = out.coeffs.get(s, 0) + k
        return out

    def scaled(self, k: int) -> "CharCycle":
        return CharCycle(self.arrangement, {s: k * v for s, v in self.coeffs.items()})

    def nonzero(self) -> dict:
        return {s: v for s, v in self.coeffs.items() if v}

    def __eq__(self, other):
        if not isinstance(other, CharCycle):
            return NotImplemented
        return self.arrangement == other.arrangement and self.nonzero() == other.nonzero()

    def to_dict(self) -> dict:
        P = intersection_poset(self.arrangement)
        return {
            "edges": [
                {
                    "id": W.id,
                    "dim": W.dim,
                    "support": list(W.sorted_support()),
                    "multiplicity": self.coeffs[W.support],
                }
                for W in P.edges
                if self.coeffs.get(W.support)
            ]
        }


@dataclass(frozen=True)
class IHBetti:
    dims: tuple
    euler_ic: int
    provenance: Provenance = Provenance.COMBINATORIAL

    def to_dict(self) -> dict:
        return {
            "ih": list(self.dims),
            "euler_ic": self.euler_ic,
            "provenance": self.provenance.value,
        }


def ih_alternating_sum(dims) -> int:
    n = len(dims) - 1
    total = sum((-1) ** i * d for i, d in enumerate(dims))
    return total if n % 2 == 0 else -total


def _require(A: Arrangement, n: int | None = None, central=False) -> None:
    if not A.essential:
        raise PreconditionError("needs an essential arrangement")
    if n is not None and A.n != n:
        raise PreconditionError(f"needs an arrangement in C^{n}")
    if central and not A.central:
        raise PreconditionError("needs a central arrangement")


def cc_pushforward(A: Arrangement) -> CharCycle:
    """Characteristic cycle of the full direct image, the same for every rank-one L."""
    _require(A)
    if A.n > 3:
        raise PreconditionError("characteristic cycles are implemented for n <= 3")
    P = intersection_poset(A)
    cc = CharCycle(A)
    for W in P.edges:
        cc.add(W, abs(P.mobius(W)))
    return cc


# ---------------------------------------------------------------------------
# dimension two


def gammas(A: Arrangement, L: LocalSystem) -> dict:
    """Coefficient of each point's conormal in the cycle of the IC sheaf (n = 2)."""
    P = intersection_poset(A)
    out = {}
    for p in P.edges_of_dim(0):
        a = [L.exponents[i] for i in p.support]
        if not any(a):
            g = 0
        elif sum(a) % 1 != 0:
            g = p.multiplicity - 1 - sum(1 for x in a if x == 0)
        else:
            g = 1
        out[p.support] = g
    return out


def cc_ic_dim2(A: Arrangement, L: LocalSystem) -> CharCycle:
    _require(A, 2)
    check_length(A, L)
    P = intersection_poset(A)
    cc = CharCycle(A)
    cc.add(P.ambient, 1)
    for i, a in enumerate(L.exponents):
        if a != 0:
            cc.add(P.edge({i}), 1)
    for sup, g in gammas(A, L).items():
        cc.add(P.edge(sup), g)
    return cc


def ih_dim2(A: Arrangement, L: LocalSystem, use_oracle: bool = True) -> IHBetti:
    _require(A, 2)
    check_length(A, L)
    if L.is_constant:
        return IHBetti((1, 0, 0), 1)
    nontrivial = [i for i, a in enumerate(L.exponents) if a != 0]
    chi = 1 - len(nontrivial) + sum(gammas(A, L).values())
    if not use_oracle:
        raise UndeterminedError("IH^1 needs the oracle for this input")
    B = A.subarrangement(nontrivial)
    h1 = twisted_betti(B, L.sub(nontrivial))[1]
    ih2 = chi + h1
    dims = (0, h1, ih2)
    if ih2 < 0 or ih_alternating_sum(dims) != chi:
        raise ArithmeticError("inconsistent IH data in dimension two")
    return IHBetti(dims, chi, Provenance.ORACLE)


# ---------------------------------------------------------------------------
# dimension three, equal monodromy


def _line_deltas(A: Arrangement, s: Fraction) -> list[tuple[Edge, int, int]]:
    P = intersection_poset(A)
    rs_int = (A.r * s) % 1 == 0
    out = []
    for X in P.edges_of_dim(1):
        m = X.multiplicity
        ms_int = (m * s) % 1 == 0
        delta = 1 if ms_int else m - 1
        delta_p = m - 2 if rs_int and ms_int else 0
        out.append((X, delta, delta_p))
    return out


def deltas(A: Arrangement, s) -> list[dict]:
    s = Fraction(s) % 1
    return [
        {"edge": X.id, "multiplicity": X.multiplicity, "delta": d, "delta_prime": dp}
        for X, d, dp in _line_deltas(A, s)
    ]


def _equal_exponent(s) -> Fraction:
    s = Fraction(s) % 1
    if s == 0:
        raise PreconditionError("equal monodromy must be non-trivial")
    return s


def _eigen(A, s, beta3_value, use_oracle) -> tuple[LocalDim, LocalDim]:
    h1, h2 = eigenspace_dims(A, s, beta3_value, use_oracle)
    return h1, h2


def cc_ic_dim3_equal(
    A: Arrangement, s, beta3_value: int | None = None, use_oracle: bool = True
) -> CharCycle:
    _require(A, 3, central=True)
    s = _equal_exponent(s)
    h1, h2 = _eigen(A, s, beta3_value, use_oracle)
    if not h2.known:
        raise UndeterminedError("the H^2 eigenspace of the Milnor fibre is undetermined")
    P = intersection_poset(A)
    cc = CharCycle(A)
    cc.add(P.ambient, 1)
    for i in range(A.r):
        cc.add(P.edge({i}), 1)
    total = 0
    for X, d, dp in _line_deltas(A, s):
        cc.add(X, d)
        total += d + dp
    origin = total - A.r + 1 - h2.value
    if origin < 0:
        raise ArithmeticError("negative coefficient at the origin")
    cc.add(P.bottom, origin)
    return cc


def ih_dim3_equal(
    A: Arrangement, s, beta3_value: int | None = None, use_oracle: bool = True
) -> IHBetti:
    _require(A, 3, central=True)
    s = _equal_exponent(s)
    h1, h2 = _eigen(A, s, beta3_value, use_oracle)
    if not (h1.known and h2.known):
        raise UndeterminedError("Milnor fibre eigenspaces are undetermined")
    sdp = sum(dp for _, _, dp in _line_deltas(A, s))
    dims = (0, h1.value, h2.value + h1.value - sdp, 0)
    chi = sdp - h2.value
    if dims[2] < 0 or ih_alternating_sum(dims) != chi:
        raise ArithmeticError("inconsistent IH data in dimension three")
    return IHBetti(dims, chi, combine_provenance([h1.provenance, h2.provenance]))


# ---------------------------------------------------------------------------
# cycles of the individual factors


def cc_factor(A: Arrangement, factor: Factor, L: LocalSystem | None = None) -> CharCycle:
    """Characteristic cycle of one decomposition factor, as a cycle on C^n.

    ``L`` is only needed for the ambient factor, which is available for n <= 2
    and for equal monodromy in C^3.
    """
    P = intersection_poset(A)
    W = factor.edge
    cc = CharCycle(A)
    if W is None:
        raise PreconditionError("factor with unknown support")
    if W.dim == 0:
        cc.add(W, 1)
        return cc
    if not W.support:
        if A.n <= 2:
            return _cc_ambient_low(A, factor.induced)
        s = factor.induced.equal_value()
        if A.n == 3 and s is not None and A.central:
            return cc_ic_dim3_equal(A, s)
        raise PreconditionError("the ambient cycle is known only for equal monodromy in C^3")
    loc = localize(A, W)
    if W.dim == 1:
        cc.add(W, 1)
        for k, tr in enumerate(loc.trace):
            if factor.induced.exponents[k] != 0:
                cc.add(P.edge(W.support | set(tr)), 1)
        return cc
    if W.dim == 2:
        sub = cc_ic_dim2(loc.A_up, factor.induced)
        Q = intersection_poset(loc.A_up)
        for X in Q.edges:
            k = sub.coefficient(X)
            if k:
                sup = set(W.support)
                for j in X.support:
                    sup |= set(loc.trace[j])
                cc.add(P.edge(sup), k)
        return cc
    raise PreconditionError("factor dimension out of range")


def _cc_ambient_low(A: Arrangement, L: LocalSystem) -> CharCycle:
    P = intersection_poset(A)
    if A.n == 2:
        return cc_ic_dim2(A, L)
    cc = CharCycle(A)
    cc.add(P.ambient, 1)
    if A.n == 1:
        for i, a in enumerate(L.exponents):
            if a != 0:
                cc.add(P.edge({i}), 1)
    return cc


def assembled_cycle(A: Arrangement, L: LocalSystem) -> CharCycle:
    """Σ multiplicity · CC(factor) over the decomposition factors of the direct image."""
    rep = exact_length(A, L)
    if not rep.determined:
        raise UndeterminedError("the length is undetermined")
    total = CharCycle(A)
    for f in rep.factors:
        if f.edge is not None and not f.edge.support:
            total = total + cc_factor(A, Factor(f.edge, L, 1))
        else:
            total = total + cc_factor(A, f).scaled(f.multiplicity)
    return total


# ---------------------------------------------------------------------------
# triple-point comparison


def _case(A: Arrangement, s: Fraction) -> tuple[bool, bool]:
    return (A.r * s) % 1 == 0, (3 * s) % 1 == 0


def verbatim_triple_point(A: Arrangement, s, beta3_value: int | None = None) -> dict:
    """The four-case closed formulas for equal monodromy, evaluated as printed."""
    s = _equal_exponent(s)
    r, k3 = A.r, n3(A)
    b3 = beta3(A) if beta3_value is None else beta3_value
    rs, cube = _case(A, s)
    c1 = comb(r - 1, 2)
    c2 = comb(r - 2, 2)
    if not rs and not cube:
        double, triple, origin = 1, 2, c1 - k3
        chi, ih1, ih2, length = 0, 0, 0, 1
    elif rs and not cube:
        double, triple, origin = 1, 2, r - 2
        chi, ih1, ih2, length = k3 - c1, 0, c1 - k3, 1 + c2 - k3
    elif not rs and cube:
        double, triple, origin = 1, 1, c1 - 2 * k3
        chi, ih1, ih2, length = 0, 0, 0, 1 + k3
    else:
        double, triple, origin = 1, 1, r - 2 - b3
        chi, ih1, ih2, length = 2 * k3 - b3 - c1, b3, 2 * b3 + c1 - 2 * k3, 1 + c2 + b3
    return {
        "double_line": double,
        "triple_line": triple,
        "origin": origin,
        "euler_ic": chi,
        "ih": [0, ih1, ih2, 0],
        "length": length,
    }


def ps_report(A: Arrangement, s, beta3_value: int | None = None) -> dict:
    """Closed four-case formulas next to the general equal-monodromy pipeline.

    Field groups: "a" = characteristic cycle, "b" = Euler characteristic,
    "c" = IH Betti numbers, "d" = length.
    """
    _require(A, 3, central=True)
    if max_line_multiplicity(A) > 3:
        raise PreconditionError("the closed formulas need line multiplicities <= 3")
    s = _equal_exponent(s)
    verb = verbatim_triple_point(A, s, beta3_value)

    cc = cc_ic_dim3_equal(A, s, beta3_value)
    ih = ih_dim3_equal(A, s, beta3_value)
    P = intersection_poset(A)
    lines = P.edges_of_dim(1)
    doubles = {cc.coefficient(X) for X in lines if X.multiplicity == 2}
    triples = {cc.coefficient(X) for X in lines if X.multiplicity == 3}
    length = exact_length(A, LocalSystem.equal(A.r, s)).exact
    pipe = {
        "double_line": doubles.pop() if len(doubles) == 1 else sorted(doubles) or None,
        "triple_line": triples.pop() if len(triples) == 1 else sorted(triples) or None,
        "origin": cc.coefficient(P.bottom),
        "euler_ic": ih.euler_ic,
        "ih": list(ih.dims),
        "length": length,
    }
    if verb["double_line"] is not None and not any(X.multiplicity == 2 for X in lines):
        verb["double_line"] = pipe["double_line"] = None
    if not any(X.multiplicity == 3 for X in lines):
        verb["triple_line"] = pipe["triple_line"] = None

    groups = {
        "a": ["double_line", "triple_line", "origin"],
        "b": ["euler_ic"],
        "c": ["ih"],
        "d": ["length"],
    }
    agree = {g: all(verb[k] == pipe[k] for k in keys) for g, keys in groups.items()}
    rs, cube = _case(A, s)
    return {
        "s": f"{s.numerator}/{s.denominator}",
        "r": A.r,
        "n3": n3(A),
        "beta3": beta3(A) if beta3_value is None else beta3_value,
        "case": {"s^r=1": rs, "s^3=1": cube},
        "closed_form": verb,
        "pipeline": pipe,
        "agree": agree,
        "disagreements": sorted(g for g, ok in agree.items() if not ok),
    }
