"""Dimensions tagged with where they came from."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Provenance(str, Enum):
    COMBINATORIAL = "combinatorial"
    ORACLE = "oracle"
    USER = "user"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class LocalDim:
    """A cohomology dimension, or ``None`` when undetermined.

    ``rule`` names the argument that produced the value (free text, for audit).
    """

    value: int | None
    provenance: Provenance
    rule: str = ""

    def __post_init__(self):
        if (self.value is None) != (self.provenance is Provenance.UNKNOWN):
            raise ValueError("a LocalDim is unknown exactly when its value is None")
        if self.value is not None and self.value < 0:
            raise ValueError("dimensions are non-negative")

    @classmethod
    def combinatorial(cls, value: int, rule: str) -> "LocalDim":
        return cls(value, Provenance.COMBINATORIAL, rule)

    @classmethod
    def oracle(cls, value: int, rule: str = "salvetti") -> "LocalDim":
        return cls(value, Provenance.ORACLE, rule)

    @classmethod
    def unknown(cls, rule: str = "") -> "LocalDim":
        return cls(None, Provenance.UNKNOWN, rule)

    @property
    def known(self) -> bool:
        return self.value is not None

    def to_dict(self) -> dict:
        return {
            "value": "unknown" if self.value is None else self.value,
            "provenance": self.provenance.value,
            "rule": self.rule,
        }


def combine_provenance(parts) -> Provenance:
    """The weakest provenance among ``parts`` (unknown < user < oracle < combinatorial)."""
    order = [Provenance.UNKNOWN, Provenance.USER, Provenance.ORACLE, Provenance.COMBINATORIAL]
    worst = Provenance.COMBINATORIAL
    for p in parts:
        if order.index(p) < order.index(worst):
            worst = p
    return worst
