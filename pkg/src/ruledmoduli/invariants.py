"""Arithmetic of Chern vectors ``(r, xi, chi)`` on a ruled surface.

The Euler characteristic is the primary field; ``c2`` is recovered through
Riemann-Roch when needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import InvalidInput
from .surface_lattice import (
    C0,
    DivClass,
    RuledSurface,
    as_fraction,
    canonical,
    intersect,
    polarization,
)

__all__ = [
    "ChernVector",
    "ExtensionData",
    "slope_vec",
    "discriminant",
    "c2",
    "euler_pairing",
    "slope_H",
    "twist",
    "normalize_fiber_degree",
    "vector_sum",
    "gcd_divisibility",
]


@dataclass(frozen=True)
class ChernVector:
    """``tau(E) = (rank, c1, chi)`` with ``c1`` an integral class."""

    r: int
    xi: DivClass
    chi: int

    def __post_init__(self):
        if isinstance(self.r, bool) or not isinstance(self.r, int):
            raise InvalidInput(f"rank must be an integer, got {self.r!r}")
        if self.r < 1:
            raise InvalidInput(f"rank must be positive, got {self.r}")
        if not isinstance(self.xi, DivClass):
            object.__setattr__(self, "xi", DivClass(*self.xi))
        if not self.xi.integral:
            raise InvalidInput(f"c1 must be integral, got {self.xi}")
        if isinstance(self.chi, Fraction) and self.chi.denominator == 1:
            object.__setattr__(self, "chi", int(self.chi))
        if isinstance(self.chi, bool) or not isinstance(self.chi, int):
            raise InvalidInput(f"chi must be an integer, got {self.chi!r}")

    @classmethod
    def of(cls, r: int, a: int, b: int, chi: int) -> ChernVector:
        return cls(r, DivClass(a, b), chi)

    @property
    def fiber_degree(self) -> int:
        return int(self.xi.a)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.r, int(self.xi.a), int(self.xi.b), self.chi)

    def __add__(self, other):
        if not isinstance(other, ChernVector):
            return NotImplemented
        return ChernVector(self.r + other.r, self.xi + other.xi, self.chi + other.chi)

    def __str__(self):
        return f"({self.r}, {self.xi}, {self.chi})"


@dataclass(frozen=True)
class ExtensionData:
    """Numerical data of ``0 -> F1(C0) -> E -> F2 -> 0``.

    ``F1``, ``F2`` are pull-backs of semistable bundles on the base curve of
    ranks ``r1``, ``r2`` and degrees ``d1``, ``d2``; ``x0`` is the point of the
    ray where the two pieces have equal ``H``-slope.
    """

    r1: int
    d1: int
    r2: int
    d2: int
    x0: Fraction

    def as_tuple(self):
        return (self.r1, self.d1, self.r2, self.d2, self.x0)


def slope_vec(e: ChernVector) -> DivClass:
    return e.xi / e.r


def _twice_r2_delta(r: int, xi: DivClass, chi, surface: RuledSurface) -> Fraction:
    # 2 r^2 Delta; an integer for integral input
    return (
        -2 * r * chi
        + 2 * r * r * surface.chi_O
        - r * intersect(xi, canonical(surface), surface)
        + intersect(xi, xi, surface)
    )


def discriminant(e: ChernVector, surface: RuledSurface) -> Fraction:
    """Bogomolov discriminant written in terms of ``chi``.

    ``(-2 r chi + 2 r^2 chi(O_X) - r (xi.K_X) + (xi^2)) / 2r^2``

    >>> discriminant(ChernVector.of(2, 1, 1, 1), RuledSurface(1, 0))
    Fraction(1, 4)
    """
    return _twice_r2_delta(e.r, e.xi, e.chi, surface) / (2 * e.r * e.r)


def c2(e: ChernVector, surface: RuledSurface) -> Fraction:
    """Second Chern class from Riemann-Roch.

    ``c2 = r chi(O_X) + (xi.(xi - K_X))/2 - chi``
    """
    k = canonical(surface)
    return e.r * surface.chi_O + intersect(e.xi, e.xi - k, surface) / 2 - e.chi


def euler_pairing(e1: ChernVector, e2: ChernVector, surface: RuledSurface) -> Fraction:
    """``chi(e1, e2)`` through Riemann-Roch in slope/discriminant form."""
    diff = slope_vec(e2) - slope_vec(e1)
    k = canonical(surface)
    quad = (intersect(diff, diff, surface) - intersect(diff, k, surface)) / 2
    return e1.r * e2.r * (
        quad + surface.chi_O - discriminant(e1, surface) - discriminant(e2, surface)
    )


def slope_H(e: ChernVector, x, surface: RuledSurface) -> Fraction:
    """``(xi.H(x)) / r``."""
    return intersect(e.xi, polarization(x), surface) / e.r


def twist(e: ChernVector, d: DivClass, surface: RuledSurface) -> ChernVector:
    """Chern vector of ``E (x) L`` for a line bundle ``L`` of class ``d``."""
    if not d.integral:
        raise InvalidInput(f"can only twist by an integral class, got {d}")
    k = canonical(surface)
    shift = intersect(e.xi, d, surface) + e.r * intersect(d, d - k, surface) / 2
    if shift.denominator != 1:  # pragma: no cover - Riemann-Roch integrality
        raise ArithmeticError(f"non-integral chi shift {shift}")
    return ChernVector(e.r, e.xi + e.r * d, e.chi + int(shift))


def normalize_fiber_degree(e: ChernVector, surface: RuledSurface) -> tuple[ChernVector, int]:
    """Twist by ``m C0`` so that ``0 <= (xi.f) < r``; returns ``(e', m)``."""
    m = -(e.fiber_degree // e.r)
    if m == 0:
        return e, 0
    return twist(e, m * C0, surface), m


def vector_sum(*vectors: ChernVector) -> ChernVector:
    if not vectors:
        raise InvalidInput("need at least one Chern vector")
    total = vectors[0]
    for v in vectors[1:]:
        total = total + v
    return total


def gcd_divisibility(e: ChernVector) -> int:
    """``gcd(r, a, b, chi)`` for ``xi = a C0 + b f``."""
    return math.gcd(e.r, int(e.xi.a), int(e.xi.b), e.chi)


def chern_vector(r, a, b, chi) -> ChernVector:
    """Build a Chern vector from loosely typed components (strings allowed)."""
    a, b, chi = as_fraction(a), as_fraction(b), as_fraction(chi)
    if chi.denominator != 1:
        raise InvalidInput(f"chi must be an integer, got {chi}")
    return ChernVector(int(r), DivClass(a, b), int(chi))
