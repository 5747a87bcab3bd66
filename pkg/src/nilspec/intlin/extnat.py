"""Positive integers extended by a single absorbing infinity."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=False)
class ExtNat:
    """Either a positive integer or INFINITY (``value is None``)."""

    value: int | None

    def __post_init__(self):
        if self.value is not None and self.value < 1:
            raise ValueError(f"finite ExtNat must be >= 1, got {self.value}")

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __mul__(self, other: ExtNat) -> ExtNat:
        if self.value is None or other.value is None:
            return INFINITY
        return ExtNat(self.value * other.value)

    def __eq__(self, other):
        if isinstance(other, ExtNat):
            return self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return "inf" if self.value is None else str(self.value)

    def __repr__(self):
        return "INFINITY" if self.value is None else f"ExtNat({self.value})"

    def to_json(self):
        return "inf" if self.value is None else self.value


INFINITY = ExtNat(None)


def ext_abs(x: int) -> ExtNat:
    """|x| for x != 0, INFINITY for x == 0."""
    return INFINITY if x == 0 else ExtNat(abs(x))


def ext_prod(values) -> ExtNat:
    out = ExtNat(1)
    for v in values:
        out = out * v
    return out
