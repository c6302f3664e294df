"""Triangular fuzzy numbers: the value currency of the whole pipeline.

A TFN (a, b, c) has support [a, c] and a single peak at b where the
membership reaches 1.  Arithmetic follows the component-wise rules for
triangular numbers; multiplication is restricted to nonnegative operands
because the component-wise product is not a valid TFN for mixed signs.
"""
from __future__ import annotations

from dataclasses import dataclass
import math


class TfnError(ValueError):
    """Raised for operations that would produce an invalid TFN."""


@dataclass(frozen=True)
class TFN:
    """Triangular fuzzy number (a, b, c) with a <= b <= c."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        for v in (self.a, self.b, self.c):
            if not math.isfinite(v):
                raise TfnError(f"TFN components must be finite, got {self!r}")
        if not (self.a <= self.b <= self.c):
            raise TfnError(f"TFN requires a <= b <= c, got ({self.a}, {self.b}, {self.c})")

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "TFN") -> "TFN":
        return TFN(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other: "TFN") -> "TFN":
        return TFN(self.a - other.c, self.b - other.b, self.c - other.a)

    def __mul__(self, other: "TFN") -> "TFN":
        if min(self.a, other.a) < 0:
            raise TfnError(
                "TFN multiplication requires nonnegative operands, got "
                f"{self.triple()} * {other.triple()}"
            )
        return TFN(self.a * other.a, self.b * other.b, self.c * other.c)

    def scale(self, r: float) -> "TFN":
        """Multiply every component by a nonnegative scalar."""
        if r < 0:
            raise TfnError(f"scale factor must be nonnegative, got {r}")
        return TFN(self.a * r, self.b * r, self.c * r)

    # -- membership ---------------------------------------------------

    def membership(self, t: float) -> float:
        """Piecewise-linear membership of t; plateaus at degenerate edges."""
        if t < self.a or t > self.c:
            return 0.0
        if self.a == self.c:
            return 1.0
        if t <= self.b:
            if self.b == self.a:
                return 1.0
            return (t - self.a) / (self.b - self.a)
        if self.c == self.b:
            return 1.0
        return (self.c - t) / (self.c - self.b)

    # -- helpers ------------------------------------------------------

    @property
    def width(self) -> float:
        return self.c - self.a

    def is_crisp(self) -> bool:
        return self.a == self.b == self.c

    def triple(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)

    @staticmethod
    def crisp(v: float) -> "TFN":
        return TFN(v, v, v)

    @staticmethod
    def zero() -> "TFN":
        return TFN(0.0, 0.0, 0.0)


def tfn_add(x: TFN, y: TFN) -> TFN:
    return x + y


def tfn_sub(x: TFN, y: TFN) -> TFN:
    return x - y


def tfn_mul(x: TFN, y: TFN) -> TFN:
    return x * y


def tfn_scale(x: TFN, r: float) -> TFN:
    return x.scale(r)


def tfn_membership(x: TFN, t: float) -> float:
    return x.membership(t)
