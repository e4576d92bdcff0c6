"""Top local cohomology dimensions and Milnor fibre data of central arrangements."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .arrangement import (
    Arrangement,
    PreconditionError,
    decompose,
    essentialize,
    intersection_poset,
    proj_euler_char,
)
from .exactmath import IntPolynomial, rank_modular, root_multiplicity
from .localsys import LocalSystem, check_length, in_W_circ
from .provenance import LocalDim, Provenance, combine_provenance
from .salvetti import coned_cohomology, top_cohomology_via_cone

__all__ = [
    "LocalDim",
    "Provenance",
    "Strategy",
    "MilnorData",
    "local_top_dim",
    "chiF_over_r",
    "n3",
    "beta3",
    "delta_polynomials",
    "eigenspace_dims",
]


@dataclass(frozen=True)
class Strategy:
    """Knobs for :func:`local_top_dim`.

    ``beta3`` overrides the mod-3 invariant; ``user_value`` is used when no
    rule applies; ``decone_index`` picks the hyperplane sent to infinity.
    """

    use_oracle: bool = True
    beta3: int | None = None
    user_value: int | None = None
    decone_index: int = 0


DEFAULT = Strategy()


def _require_central_essential(A: Arrangement, what: str) -> None:
    if not A.central:
        raise PreconditionError(f"{what} needs a central arrangement")
    if not A.essential:
        raise PreconditionError(f"{what} needs an essential arrangement")


def max_line_multiplicity(A: Arrangement) -> int:
    P = intersection_poset(A)
    return max((e.multiplicity for e in P.edges_of_dim(1)), default=0)


@lru_cache(maxsize=65536)
def local_top_dim(A_W: Arrangement, L_W: LocalSystem, strategy: Strategy = DEFAULT) -> LocalDim:
    """dim H^w(U_W, L_W) for a central essential arrangement in C^w, w <= 3."""
    check_length(A_W, L_W)
    w = A_W.n
    if w > 3:
        raise PreconditionError("local dimensions are implemented for w <= 3")
    if w == 0:
        return LocalDim.combinatorial(1, "point")
    _require_central_essential(A_W, "local_top_dim")
    a = L_W.exponents
    if w == 1:
        return LocalDim.combinatorial(int(a[0] == 0), "punctured line")
    if sum(a) % 1 != 0:
        return LocalDim.combinatorial(0, "product of monodromies is not 1")
    P = intersection_poset(A_W)
    if L_W.is_constant:
        return LocalDim.combinatorial(abs(P.mobius(P.bottom)), "top Betti number")
    if w == 2:
        return LocalDim.combinatorial(A_W.r - 2, "pencil with trivial total monodromy")

    factors = decompose(A_W)
    if len(factors) > 1:
        parts = []
        for comp in factors:
            idx = sorted(comp)
            sub = essentialize(A_W.subarrangement(idx))
            d = local_top_dim(sub, L_W.sub(idx), strategy)
            if d.value == 0:
                return LocalDim.combinatorial(0, "product over matroid factors")
            parts.append(d)
        if any(not d.known for d in parts):
            return LocalDim.unknown("product over matroid factors")
        value = 1
        for d in parts:
            value *= d.value
        return LocalDim(value, combine_provenance(d.provenance for d in parts), "product over matroid factors")

    if in_W_circ(A_W, L_W, P.bottom):
        return LocalDim.combinatorial(
            abs(proj_euler_char(A_W, P.bottom)), "only the center resonates"
        )

    s = L_W.equal_value()
    if s is not None and max_line_multiplicity(A_W) <= 3:
        b3 = strategy.beta3 if strategy.beta3 is not None else beta3(A_W)
        md = delta_polynomials(A_W, b3)
        return LocalDim.combinatorial(
            root_multiplicity(md.delta2, s.denominator), "eigenspace of the Milnor monodromy"
        )

    if strategy.use_oracle:
        return top_cohomology_via_cone(A_W, L_W, strategy.decone_index)
    if strategy.user_value is not None:
        return LocalDim(strategy.user_value, Provenance.USER, "user supplied")
    return LocalDim.unknown("no rule applies")


# ---------------------------------------------------------------------------
# Milnor fibre


def n3(A: Arrangement) -> int:
    return sum(1 for e in intersection_poset(A).edges_of_dim(1) if e.multiplicity == 3)


def chiF_over_r(A: Arrangement) -> int:
    """χ(F)/r for a central essential arrangement in C^3."""
    _require_central_essential(A, "chiF_over_r")
    if A.n != 3:
        raise PreconditionError("chiF_over_r is defined here for n = 3")
    P = intersection_poset(A)
    value = -2 * A.r + 3 + sum(e.multiplicity - 1 for e in P.edges_of_dim(1))
    if value != proj_euler_char(A, P.bottom):
        raise ArithmeticError("χ(F)/r disagrees with the projective Euler characteristic")
    if max_line_multiplicity(A) <= 3 and value != comb(A.r - 2, 2) - n3(A):
        raise ArithmeticError("χ(F)/r disagrees with the triple-point count")
    return value


def _check_triple_points(A: Arrangement, what: str) -> None:
    _require_central_essential(A, what)
    if A.n != 3:
        raise PreconditionError(f"{what} is defined here for n = 3")
    if max_line_multiplicity(A) > 3:
        raise PreconditionError(f"{what} needs all line multiplicities <= 3")


@lru_cache(maxsize=1024)
def beta3(A: Arrangement) -> int:
    """dim over F_3 of H^1 of the Aomoto complex with ω = Σ e_i.

    Degree-two Orlik-Solomon relations: for each line X of the lattice with
    smallest member x0, the products e_{x0} e_k (k in X, k > x0) form a basis
    of the X-summand and e_i e_j = e_{x0} e_j - e_{x0} e_i.
    """
    _check_triple_points(A, "beta3")
    P = intersection_poset(A)
    coords: dict[tuple[int, int], int] = {}
    rules: dict[tuple[int, int], list[tuple[tuple[int, int], int]]] = {}
    for X in P.edges_of_dim(1):
        S = sorted(X.support)
        x0 = S[0]
        for k in S[1:]:
            coords[(x0, k)] = len(coords)
        for a in range(len(S)):
            for b in range(a + 1, len(S)):
                i, j = S[a], S[b]
                if i == x0:
                    rules[(i, j)] = [((x0, j), 1)]
                else:
                    rules[(i, j)] = [((x0, j), 1), ((x0, i), -1)]
    # columns: images of e_k; ω e_k = Σ_i e_i e_k = Σ_{i<k} e_i e_k - Σ_{i>k} e_k e_i
    matrix = [[0] * A.r for _ in coords]
    for k in range(A.r):
        for i in range(A.r):
            if i == k:
                continue
            pair, sign = ((i, k), 1) if i < k else ((k, i), -1)
            for basis, c in rules[pair]:
                matrix[coords[basis]][k] += sign * c
    rank = rank_modular(matrix, 3) if coords else 0
    value = A.r - rank - 1
    if value not in (0, 1, 2):
        raise ArithmeticError(f"mod-3 invariant {value} outside {{0, 1, 2}}")
    return value


@dataclass(frozen=True)
class MilnorData:
    chiF_over_r: int
    n3: int
    beta3: int | None
    beta3_provenance: str
    delta0: IntPolynomial
    delta1: IntPolynomial | None
    delta2: IntPolynomial | None
    factored: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {
            "chiF_over_r": self.chiF_over_r,
            "n3": self.n3,
            "beta3": "unknown" if self.beta3 is None else self.beta3,
            "beta3_provenance": self.beta3_provenance,
            "delta0": self.delta0.to_list(),
            "delta1": None if self.delta1 is None else self.delta1.to_list(),
            "delta2": None if self.delta2 is None else self.delta2.to_list(),
            "factored": self.factored,
        }


_T_MINUS_1 = IntPolynomial([-1, 1])
_T2_T_1 = IntPolynomial([1, 1, 1])


@lru_cache(maxsize=1024)
def delta_polynomials(A: Arrangement, beta3_value: int | None = None) -> MilnorData:
    """Characteristic polynomials of the Milnor monodromy on H^0, H^1, H^2."""
    _check_triple_points(A, "delta_polynomials")
    prov = "user"
    if beta3_value is None:
        beta3_value, prov = beta3(A), "combinatorial (mod-3 Aomoto complex)"
    r = A.r
    chi = chiF_over_r(A)
    k = comb(r - 2, 2) - n3(A)
    tr1 = IntPolynomial.monomial(r) - 1
    d0 = _T_MINUS_1
    d1 = _T_MINUS_1 ** (r - 1) * _T2_T_1 ** beta3_value
    d2 = _T_MINUS_1 ** (r - 2) * tr1 ** k * _T2_T_1 ** beta3_value
    if d0 * d2 != d1 * tr1 ** chi:
        raise ArithmeticError("Δ0·Δ2 and Δ1·(t^r-1)^(χ(F)/r) differ")
    factored = {
        "delta0": [{"factor": "t-1", "power": 1}],
        "delta1": [{"factor": "t-1", "power": r - 1},
                   {"factor": "t^2+t+1", "power": beta3_value}],
        "delta2": [{"factor": "t-1", "power": r - 2},
                   {"factor": f"t^{r}-1", "power": k},
                   {"factor": "t^2+t+1", "power": beta3_value}],
    }
    return MilnorData(chi, n3(A), beta3_value, prov, d0, d1, d2, factored)


def eigenspace_dims(
    A: Arrangement, s, beta3_value: int | None = None, use_oracle: bool = True,
    decone_index: int = 0,
) -> tuple[LocalDim, LocalDim]:
    """(dim H^1(F)_λ, dim H^2(F)_λ) for λ = exp(2 pi i s), s not an integer."""
    s = Fraction(s) % 1
    if s == 0:
        raise PreconditionError("eigenspace_dims needs a non-trivial eigenvalue")
    _require_central_essential(A, "eigenspace_dims")
    if A.n != 3:
        raise PreconditionError("eigenspace_dims is defined here for n = 3")
    if (A.r * s) % 1 != 0:
        z = LocalDim.combinatorial(0, "λ is not an r-th root of unity")
        return z, z
    d = s.denominator
    if max_line_multiplicity(A) <= 3:
        md = delta_polynomials(A, beta3_value)
        return (
            LocalDim.combinatorial(root_multiplicity(md.delta1, d), "root multiplicity in Δ1"),
            LocalDim.combinatorial(root_multiplicity(md.delta2, d), "root multiplicity in Δ2"),
        )
    if use_oracle:
        L = LocalSystem.equal(A.r, s)
        return (
            coned_cohomology(A, L, 1, decone_index),
            coned_cohomology(A, L, 2, decone_index),
        )
    return LocalDim.unknown("multiplicity above 3"), LocalDim.unknown("multiplicity above 3")


def eigenspace_dims_oracle(A: Arrangement, s, decone_index: int = 0) -> tuple[int, int]:
    s = Fraction(s) % 1
    if (A.r * s) % 1 != 0:
        return 0, 0
    L = LocalSystem.equal(A.r, s)
    return (
        coned_cohomology(A, L, 1, decone_index).value,
        coned_cohomology(A, L, 2, decone_index).value,
    )
