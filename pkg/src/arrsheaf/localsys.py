"""Rank-one torsion local systems given by exponents a_i, t_i = exp(2 pi i a_i)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .arrangement import (
    Arrangement,
    Edge,
    decompose,
    dense_edges,
    intersection_poset,
    is_dense,
    localize,
)
from .exactmath import format_rational, parse_rational


class LocalSystemError(ValueError):
    pass


@dataclass(frozen=True)
class LocalSystem:
    """Exponents reduced to [0, 1); ``a_i == 0`` iff the monodromy t_i is trivial."""

    exponents: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "exponents", tuple(Fraction(a) % 1 for a in self.exponents)
        )

    @classmethod
    def equal(cls, r: int, s) -> "LocalSystem":
        return cls((Fraction(s),) * r)

    @classmethod
    def trivial(cls, r: int) -> "LocalSystem":
        return cls((Fraction(0),) * r)

    @classmethod
    def parse(cls, raw) -> "LocalSystem":
        """Accept a list of rationals, a JSON array string, or ``"0,1/2,1/2"``."""
        if isinstance(raw, str):
            text = raw.strip()
            if text.startswith("["):
                try:
                    raw = json.loads(text)
                except json.JSONDecodeError as exc:
                    raise LocalSystemError(f"invalid JSON local system: {exc}") from None
            else:
                raw = [x for x in text.split(",")] if text else []
        if not isinstance(raw, (list, tuple)):
            raise LocalSystemError(f"cannot read a local system from {raw!r}")
        try:
            return cls(tuple(parse_rational(x) for x in raw))
        except ValueError as exc:
            raise LocalSystemError(str(exc)) from None

    def __len__(self):
        return len(self.exponents)

    def __getitem__(self, i):
        return self.exponents[i]

    @property
    def is_constant(self) -> bool:
        return not any(self.exponents)

    def zeros(self) -> list[int]:
        return [i for i, a in enumerate(self.exponents) if a == 0]

    def equal_value(self) -> Fraction | None:
        """The common exponent if all exponents agree, else None."""
        vals = set(self.exponents)
        return next(iter(vals)) if len(vals) == 1 else None

    def sub(self, indices: Iterable[int]) -> "LocalSystem":
        return LocalSystem(tuple(self.exponents[i] for i in indices))

    def to_list(self) -> list[str]:
        return [format_rational(a) for a in self.exponents]

    def __str__(self):
        return "(" + ", ".join(self.to_list()) + ")"


def check_length(A: Arrangement, L: LocalSystem) -> None:
    if len(L) != A.r:
        raise LocalSystemError(
            f"local system has {len(L)} exponents but the arrangement has {A.r} hyperplanes"
        )


def edge_product(A: Arrangement, L: LocalSystem, W: Edge) -> tuple[Fraction, bool]:
    """Sum of exponents over the support of W, mod 1, and whether it is 0."""
    total = sum((L.exponents[i] for i in W.support), Fraction(0)) % 1
    return total, total == 0


def restrict_edge(A: Arrangement, L: LocalSystem, W: Edge) -> LocalSystem:
    return L.sub(sorted(W.support))


def induce_edge(A: Arrangement, L: LocalSystem, W: Edge) -> LocalSystem:
    loc = localize(A, W)
    return LocalSystem(tuple(sum(L.exponents[i] for i in tr) for tr in loc.trace))


def induce_from_trace(L: LocalSystem, trace) -> LocalSystem:
    return LocalSystem(tuple(sum(L.exponents[i] for i in tr) for tr in trace))


def dense_factor_edges(A: Arrangement, W: Edge) -> list[Edge]:
    """The dense edges of A cut out by the matroid factors of A_W."""
    P = intersection_poset(A)
    if not W.support:
        return []
    support = sorted(W.support)
    loc = localize(A, W)
    return [P.edge(support[k] for k in comp) for comp in decompose(loc.A_W)]


@lru_cache(maxsize=65536)
def in_W(A: Arrangement, L: LocalSystem, W: Edge) -> bool:
    if not W.support:
        return True
    if is_dense(A, W):
        return edge_product(A, L, W)[1]
    return all(in_W(A, L, X) for X in dense_factor_edges(A, W))


def in_W_circ(A: Arrangement, L: LocalSystem, W: Edge) -> bool:
    if not in_W(A, L, W):
        return False
    return not any(
        X.support != W.support and in_W(A, L, X) for X in dense_edges(A)
    )


def resonant_dense_edges(A: Arrangement, L: LocalSystem) -> list[Edge]:
    return [W for W in dense_edges(A) if edge_product(A, L, W)[1]]
