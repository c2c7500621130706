"""Intersection theory on the Neron-Severi lattice of a ruled surface.

A ruled surface ``pi: X -> C`` over a curve of genus ``g`` has
``NS(X) = Z C0 + Z f`` where ``C0`` is a minimal section with
``(C0^2) = -e`` and ``f`` is a fiber, so ``(C0.f) = 1`` and ``(f^2) = 0``.
Classes are written ``a*C0 + b*f`` and stored as the pair ``(a, b)`` of
exact rationals.

>>> S = RuledSurface(1, 0)
>>> intersect(DivClass(1, 1), DivClass(1, 1), S)
Fraction(2, 1)
>>> canonical(S)
DivClass(a=Fraction(-2, 1), b=Fraction(0, 1))
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

__all__ = [
    "RuledSurface",
    "DivClass",
    "ZERO",
    "C0",
    "FIBER",
    "intersect",
    "canonical",
    "polarization",
    "is_ample",
    "ample_threshold",
    "k_dot_h",
    "as_fraction",
]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: every quantity in this package is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Rational, str)):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class RuledSurface:
    """Numerical type ``(g, e)`` of a P^1-bundle over a genus ``g`` curve."""

    genus: int
    invariant: int

    def __post_init__(self):
        if not isinstance(self.genus, int) or self.genus < 0:
            raise ValueError(f"genus must be a non-negative integer, got {self.genus!r}")
        if not isinstance(self.invariant, int):
            raise ValueError(f"invariant e must be an integer, got {self.invariant!r}")

    @property
    def e(self) -> int:
        return self.invariant

    @property
    def chi_O(self) -> int:
        """Holomorphic Euler characteristic ``1 - g``."""
        return 1 - self.genus

    def canonical(self) -> DivClass:
        return canonical(self)

    def k_squared(self) -> Fraction:
        return intersect(canonical(self), canonical(self), self)

    def __str__(self):
        return f"X(g={self.genus}, e={self.invariant})"


@dataclass(frozen=True, slots=True)
class DivClass:
    """A class ``a*C0 + b*f`` in ``NS(X) (x) Q``."""

    a: Fraction
    b: Fraction

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", as_fraction(a))
        object.__setattr__(self, "b", as_fraction(b))

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction) -> DivClass:
        # skips coercion; both arguments must already be Fractions
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        return obj

    def __add__(self, other):
        if not isinstance(other, DivClass):
            return NotImplemented
        return DivClass._raw(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        if not isinstance(other, DivClass):
            return NotImplemented
        return DivClass._raw(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return DivClass._raw(-self.a, -self.b)

    def __mul__(self, scalar):
        if isinstance(scalar, DivClass):
            return NotImplemented
        s = as_fraction(scalar)
        return DivClass._raw(self.a * s, self.b * s)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        s = as_fraction(scalar)
        return DivClass._raw(self.a / s, self.b / s)

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __iter__(self):
        yield self.a
        yield self.b

    @property
    def integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    @property
    def fiber_degree(self) -> Fraction:
        """``(D.f)``, the coefficient of ``C0``."""
        return self.a

    def dot_C0(self, surface: RuledSurface) -> Fraction:
        return -surface.invariant * self.a + self.b

    def __str__(self):
        return _format_class(self.a, self.b)


def _format_class(a: Fraction, b: Fraction) -> str:
    terms = []
    for coeff, name in ((a, "C0"), (b, "f")):
        if coeff == 0:
            continue
        if coeff == 1:
            terms.append(f"+{name}")
        elif coeff == -1:
            terms.append(f"-{name}")
        else:
            sign = "+" if coeff > 0 else "-"
            terms.append(f"{sign}{abs(coeff)}{name}")
    if not terms:
        return "0"
    text = "".join(terms)
    return text[1:] if text.startswith("+") else text


ZERO = DivClass(0, 0)
C0 = DivClass(1, 0)
FIBER = DivClass(0, 1)


def intersect(d1: DivClass, d2: DivClass, surface: RuledSurface) -> Fraction:
    """Intersection number ``(d1.d2) = -e a1 a2 + a1 b2 + a2 b1``."""
    # clear denominators so that only one Fraction is built per call
    n1, m1 = _integral_pair(d1)
    n2, m2 = _integral_pair(d2)
    (a1, b1), (a2, b2) = n1, n2
    return Fraction(-surface.invariant * a1 * a2 + a1 * b2 + a2 * b1, m1 * m2)


def _integral_pair(d: DivClass):
    a, b = d.a, d.b
    da, db = a.denominator, b.denominator
    if da == db:
        return (a.numerator, b.numerator), da
    m = da * db // math.gcd(da, db)
    return (a.numerator * (m // da), b.numerator * (m // db)), m


@functools.lru_cache(maxsize=64)
def canonical(surface: RuledSurface) -> DivClass:
    """``K_X = -2 C0 - (2 - 2g + e) f``."""
    return DivClass(-2, -(2 - 2 * surface.genus + surface.invariant))


def polarization(x) -> DivClass:
    """The class ``H(x) = C0 + x f``; ampleness is not checked here."""
    return DivClass(1, x)


def ample_threshold(surface: RuledSurface) -> Fraction:
    """Infimum of the ample part of the ray ``H(x)``.

    ``H(x)`` is ample iff ``x`` is strictly greater than this value.
    """
    e = surface.invariant
    return Fraction(e) if e >= 0 else Fraction(e, 2)


def is_ample(surface: RuledSurface, d: DivClass) -> bool:
    """Numerical ampleness of ``a C0 + b f`` on a ruled surface.

    ``a > 0`` together with ``b > a e`` when ``e >= 0`` and ``b > a e / 2``
    when ``e < 0``.
    """
    if d.a <= 0:
        return False
    e = surface.invariant
    if e >= 0:
        return d.b > d.a * e
    return d.b > d.a * Fraction(e, 2)


def k_dot_h(surface: RuledSurface, x) -> Fraction:
    """``(K_X . H(x)) = e + 2g - 2 - 2x``."""
    x = as_fraction(x)
    return surface.invariant + 2 * surface.genus - 2 - 2 * x
