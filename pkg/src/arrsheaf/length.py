"""Lengths of the direct image of a rank-one local system, with decomposition factors."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Mapping

from .arrangement import (
    Arrangement,
    Edge,
    PreconditionError,
    dense_edges,
    essentialize,
    intersection_poset,
    localize,
    proj_euler_char,
    triple,
)
from .localcohom import DEFAULT, Strategy, local_top_dim
from .localsys import (
    LocalSystem,
    check_length,
    edge_product,
    in_W_circ,
    induce_from_trace,
    restrict_edge,
)
from .provenance import LocalDim, Provenance


@dataclass(frozen=True)
class Factor:
    """``multiplicity`` copies of the intermediate extension of ``induced`` from ``edge``.

    ``edge`` is None only for an extra skyscraper whose support point is not
    pinned down (non-central input).
    """

    edge: Edge | None
    induced: LocalSystem
    multiplicity: int
    extra: bool = False

    def to_dict(self) -> dict:
        return {
            "edge": None if self.edge is None else self.edge.id,
            "support": None if self.edge is None else list(self.edge.sorted_support()),
            "dim": None if self.edge is None else self.edge.dim,
            "induced": self.induced.to_list(),
            "multiplicity": self.multiplicity,
            "extra": self.extra,
        }


@dataclass
class LengthReport:
    """Length bounds for one (arrangement, local system) pair.

    ``lower`` sums the known local dimensions; ``upper`` bounds the length from
    above; ``exact`` is set once both agree.  ``gap_bound`` is the number of
    trivial monodromies in the three-dimensional case.
    """

    lower: int
    upper: int
    exact: int | None
    factors: list[Factor] = field(default_factory=list)
    local_dims: list[dict] = field(default_factory=list)
    undetermined: list[int] = field(default_factory=list)
    gap_bound: int = 0
    steps: list[dict] = field(default_factory=list)
    partial: bool = False
    orders_checked: list[int] = field(default_factory=list)

    @property
    def determined(self) -> bool:
        return self.exact is not None

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "exact": "undetermined" if self.exact is None else self.exact,
            "gap_bound": self.gap_bound,
            "factors": [f.to_dict() for f in self.factors],
            "local_dims": self.local_dims,
            "undetermined": self.undetermined,
            "steps": self.steps,
            "partial": self.partial,
            "orders_checked": self.orders_checked,
        }


def _require_essential(A: Arrangement, what: str) -> None:
    if not A.essential:
        raise PreconditionError(f"{what} needs an essential arrangement")


def constant_length(A: Arrangement) -> int:
    """Length for the constant sheaf: the sum of |μ| over all edges."""
    _require_essential(A, "constant_length")
    P = intersection_poset(A)
    return sum(abs(P.mobius(W)) for W in P.edges)


def edge_local_dim(
    A: Arrangement, L: LocalSystem, W: Edge, strategy: Strategy = DEFAULT,
    user_value: int | None = None,
) -> LocalDim:
    if not W.support:
        return LocalDim.combinatorial(1, "ambient stratum")
    if A.n - W.dim > 3:
        return LocalDim.unknown("codimension above 3")
    loc = localize(A, W)
    strat = strategy if user_value is None else replace(strategy, user_value=user_value)
    return local_top_dim(loc.A_W, restrict_edge(A, L, W), strat)


def _user_key(support) -> frozenset:
    return frozenset(support)


@dataclass(frozen=True)
class _Options:
    strategy: Strategy
    user_dims: tuple  # ((support frozenset, value), ...)


def lower_bound(
    A: Arrangement, L: LocalSystem, strategy: Strategy = DEFAULT,
    user_dims: Mapping | None = None,
) -> LengthReport:
    """Sum over all edges of the local top cohomology dimension, with its factor list."""
    _require_essential(A, "lower_bound")
    check_length(A, L)
    return _lower_bound(A, L, _options(strategy, user_dims))


def _options(strategy, user_dims) -> _Options:
    items = tuple(sorted(((_user_key(k), int(v)) for k, v in (user_dims or {}).items()),
                         key=lambda kv: sorted(kv[0])))
    return _Options(strategy, items)


@lru_cache(maxsize=8192)
def _lower_bound(A: Arrangement, L: LocalSystem, opts: _Options) -> LengthReport:
    P = intersection_poset(A)
    users = dict(opts.user_dims)
    lower = 0
    hi = 0
    factors, dims, undetermined = [], [], []
    for W in P.edges:
        d = edge_local_dim(A, L, W, opts.strategy, users.get(W.support))
        dims.append({
            "edge": W.id,
            "support": list(W.sorted_support()),
            "dim": W.dim,
            **d.to_dict(),
        })
        if d.known:
            lower += d.value
            hi += d.value
            if d.value:
                induced = _induced(A, L, W)
                factors.append(Factor(W, induced, d.value))
        else:
            undetermined.append(W.id)
            # a factor supported on W contributes to the conormal coefficient at W
            hi += abs(P.mobius(W))
    exact = lower if not undetermined else None
    return LengthReport(
        lower=lower, upper=hi, exact=exact, factors=factors, local_dims=dims,
        undetermined=undetermined, partial=A.n > 3,
    )


def _induced(A: Arrangement, L: LocalSystem, W: Edge) -> LocalSystem:
    if W.dim == 0:
        return LocalSystem(())
    return induce_from_trace(L, localize(A, W).trace)


def exact_length(
    A: Arrangement, L: LocalSystem, strategy: Strategy = DEFAULT,
    user_dims: Mapping | None = None, all_orders: bool = False,
) -> LengthReport:
    """Exact length for n <= 3, or an interval when some local input is undetermined.

    In C^3 a hyperplane with trivial monodromy is removed and the lengths of
    the deletion and the restriction are added; the lowest such index is used
    unless ``all_orders`` asks to check every choice at the top level.
    """
    _require_essential(A, "exact_length")
    check_length(A, L)
    if A.n > 3:
        raise PreconditionError("exact lengths are available for n <= 3")
    opts = _options(strategy, user_dims)
    report = _exact(A, L, opts, None)
    if all_orders and A.n == 3 and L.zeros():
        values = {}
        for i in L.zeros():
            values[i] = _exact(A, L, opts, i).exact
        known = {v for v in values.values() if v is not None}
        if len(known) > 1:
            raise ArithmeticError(f"deletion orders disagree: {values}")
        report = replace(report, orders_checked=sorted(values))
    return report


def _sub_options(opts: _Options) -> _Options:
    # user-supplied dims refer to edges of the top-level arrangement only
    return _Options(opts.strategy, ())


@lru_cache(maxsize=8192)
def _exact(A: Arrangement, L: LocalSystem, opts: _Options, first: int | None) -> LengthReport:
    base = _lower_bound(A, L, opts)
    zeros = L.zeros()
    if A.n <= 2 or not zeros:
        return replace(base, gap_bound=0, steps=[])

    i = zeros[0] if first is None else first
    tri = triple(A, i)
    A1 = essentialize(tri.deleted)
    L1 = L.sub(tri.kept)
    A2 = tri.restricted
    L2 = induce_from_trace(L, tri.trace)
    sub = _sub_options(opts)
    r1 = _exact(A1, L1, sub, None)
    r2 = _exact(A2, L2, sub, None)
    lo = max(base.lower, _lo(r1) + _lo(r2))
    hi = min(constant_length(A), r1.upper + r2.upper)
    exact = r1.exact + r2.exact if r1.determined and r2.determined else None

    step = {
        "deleted": i,
        "deleted_length": r1.exact if r1.determined else "undetermined",
        "restricted_length": r2.exact if r2.determined else "undetermined",
        "lower": base.lower if base.determined else "undetermined",
        "lower_deleted": r1.lower,
        "lower_restricted": r2.lower,
    }
    if base.determined and r1.determined and r2.determined:
        l1 = _lower_bound(A1, L1, sub)
        l2 = _lower_bound(A2, L2, sub)
        step["difference"] = l1.lower + l2.lower - base.lower
        if A.central:
            terms = _difference_terms(A, L, A1, L1, A2, L2, opts.strategy)
            if terms is not None:
                step["terms"] = terms
    steps = [step] + [dict(s, depth=s.get("depth", 0) + 1) for s in r1.steps]

    factors = list(base.factors)
    P = intersection_poset(A)
    origin_only = A.central and base.undetermined == [P.bottom.id]
    if exact is not None and exact > base.lower and (base.determined or origin_only):
        # skyscrapers beyond the edge sum; for central input they sit at the origin
        edge = P.bottom if A.central else None
        factors.append(Factor(edge, LocalSystem(()), exact - base.lower, extra=True))
    return replace(
        base,
        upper=exact if exact is not None else max(hi, lo),
        exact=exact,
        factors=factors,
        gap_bound=len(zeros) if A.n == 3 else 0,
        steps=steps,
    )


def _lo(r: LengthReport) -> int:
    return r.exact if r.determined else r.lower


def _difference_terms(A, L, A1, L1, A2, L2, strategy) -> dict | None:
    """(h^3 of the deletion, h^2 of the restriction, h^3 of A) for central A in C^3."""
    h = local_top_dim(A, L, strategy)
    h1 = local_top_dim(A1, L1, strategy) if A1.n == 3 else LocalDim.combinatorial(0, "not essential")
    h2 = local_top_dim(A2, L2, strategy) if A2.n == 2 else LocalDim.combinatorial(0, "not essential")
    if not (h.known and h1.known and h2.known):
        return None
    return {
        "h3_deleted": h1.value,
        "h2_restricted": h2.value,
        "h3": h.value,
        "difference": h1.value + h2.value - h.value,
    }


def is_length_one(A: Arrangement, L: LocalSystem) -> bool:
    if not A.central:
        raise PreconditionError("the length-one criterion needs a central arrangement")
    check_length(A, L)
    return not any(edge_product(A, L, W)[1] for W in dense_edges(A))


def is_length_two(A: Arrangement, L: LocalSystem):
    """(True, witness edge, factor pair) when the length-two criterion holds, else (False, None, [])."""
    _require_essential(A, "is_length_two")
    check_length(A, L)
    dense = dense_edges(A)
    resonant = [W for W in dense if edge_product(A, L, W)[1]]
    if len(resonant) == 1:
        W = resonant[0]
        if abs(proj_euler_char(A, W)) == 1:
            P = intersection_poset(A)
            pair = [Factor(P.ambient, L, 1), Factor(W, _induced(A, L, W), 1)]
            return True, W, pair
    return False, None, []


def length_Wcirc(A: Arrangement, L: LocalSystem, W: Edge) -> int:
    check_length(A, L)
    if not in_W_circ(A, L, W):
        raise PreconditionError("the local system is not in the open resonance stratum of W")
    if not W.support:
        return 1
    return 1 + abs(proj_euler_char(A, W))


__all__ = [
    "Factor",
    "LengthReport",
    "Provenance",
    "constant_length",
    "lower_bound",
    "exact_length",
    "is_length_one",
    "is_length_two",
    "length_Wcirc",
    "edge_local_dim",
]
