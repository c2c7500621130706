"""Numerical walls for mu-stability along the polarization ray ``H(x) = C0 + x f``.

A wall for ``e = (r, xi, chi)`` is a point ``x_w`` where some numerical
subobject ``(r1, xi1, chi1)`` with ``0 < r1 < r``, both pieces of
non-negative discriminant and ``mu(E) != mu(F)`` has the same ``H(x_w)``-slope
as ``E``. Walls reported here are numerical: no claim is made that an actual
destabilizing subsheaf exists.

Enumeration
-----------
Put ``r2 = r - r1``, ``A = r a1 - r1 a``, ``B = r b1 - r1 b``; then
``(A, B) = r1 r2 (mu(F) - mu(E/F))``. Writing ``C = 2B - eA`` one has
``(A, B)^2 = A C`` and, from the decomposition of the discriminant along
``0 -> F -> E -> E/F -> 0``,

    -2 r^2 Delta(e) r1 r2  <=  A C  <  0,

the right inequality being the Hodge index theorem on a wall that meets the
ample cone. So only the finitely many factorizations ``A C = -k`` with
``1 <= k <= 2 r^2 Delta r1 r2`` need to be visited; the wall sits at
``x_w = e/2 - C / 2A``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exceptions import InvalidInput
from .invariants import ChernVector, _twice_r2_delta
from .surface_lattice import (
    DivClass,
    RuledSurface,
    ample_threshold,
    as_fraction,
    intersect,
    is_ample,
    polarization,
)

__all__ = [
    "WallWitness",
    "Wall",
    "Chamber",
    "ChamberDecomposition",
    "XRange",
    "wall_of",
    "chi_feasible",
    "enumerate_walls",
    "chambers",
    "clip_range",
]


@dataclass(frozen=True, order=True)
class WallWitness:
    r1: int
    xi1: tuple[int, int]
    chi_min: int
    chi_max: int

    @property
    def chi_interval(self) -> range:
        return range(self.chi_min, self.chi_max + 1)

    def subvector(self, chi1: int) -> ChernVector:
        return ChernVector.of(self.r1, self.xi1[0], self.xi1[1], chi1)


@dataclass(frozen=True)
class Wall:
    x: Fraction
    zeta: DivClass
    witnesses: tuple[WallWitness, ...] = field(default=())

    @property
    def x_w(self) -> Fraction:
        return self.x


@dataclass(frozen=True)
class XRange:
    """A sub-interval of the ray; ``hi is None`` stands for ``+infinity``."""

    lo: Fraction
    hi: Optional[Fraction]
    lo_closed: bool = False
    hi_closed: bool = False

    def __contains__(self, x) -> bool:
        if x < self.lo or (x == self.lo and not self.lo_closed):
            return False
        if self.hi is None:
            return True
        return x < self.hi or (x == self.hi and self.hi_closed)

    def __str__(self):
        left = "[" if self.lo_closed else "("
        if self.hi is None:
            return f"{left}{self.lo}, +inf)"
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo}, {self.hi}{right}"


@dataclass(frozen=True)
class Chamber(XRange):
    """Range-clipped piece of a chamber; ends are closed only at range ends."""

    def sample(self) -> Fraction:
        """A rational point strictly inside the chamber."""
        if self.hi is None:
            return self.lo + 1
        return (self.lo + self.hi) / 2


@dataclass(frozen=True)
class ChamberDecomposition:
    range: XRange
    walls: tuple[Wall, ...]
    chambers: tuple[Chamber, ...]

    @property
    def wall_points(self) -> tuple[Fraction, ...]:
        return tuple(w.x for w in self.walls)

    def chamber_containing(self, x) -> Optional[Chamber]:
        """The chamber containing ``x``, or None if ``x`` is a wall or out of range."""
        x = as_fraction(x)
        for c in self.chambers:
            if x in c:
                return c
        return None

    def sides(self, x_wall) -> tuple[Optional[Chamber], Optional[Chamber]]:
        """Chambers immediately below and above a wall (the ``x -/+ epsilon`` sides)."""
        x_wall = as_fraction(x_wall)
        below = above = None
        for c in self.chambers:
            if c.hi == x_wall:
                below = c
            if c.lo == x_wall:
                above = c
        return below, above


def _check_split(e: ChernVector, r1: int):
    if not isinstance(r1, int) or not 0 < r1 < e.r:
        raise InvalidInput(f"sub-rank must satisfy 0 < r1 < {e.r}, got {r1!r}")


def _check_integral(xi1: DivClass):
    if not xi1.integral:
        raise InvalidInput(f"sub-object class must be integral, got {xi1}")


def wall_of(e: ChernVector, r1: int, xi1: DivClass, surface: RuledSurface) -> Optional[Fraction]:
    """Point ``x`` with ``((mu(E) - mu(F)).H(x)) = 0``, or None.

    None when ``mu(F) = mu(E)`` or when the difference is a non-zero multiple
    of ``f`` (its pairing with ``H(x)`` never vanishes). Ampleness of the
    returned point is not checked.
    """
    _check_split(e, r1)
    _check_integral(xi1)
    d = xi1 / r1 - e.xi / e.r
    if d.a == 0:
        return None
    return surface.invariant - d.b / d.a


def _chi_bounds(e: ChernVector, r1: int, xi1: DivClass, surface: RuledSurface):
    # Delta(r1, xi1, t) >= 0  <=>  t <= q1 / 2r1
    # Delta(r2, xi2, chi - t) >= 0  <=>  t >= chi - q2 / 2r2
    r2 = e.r - r1
    xi2 = e.xi - xi1
    q1 = _twice_r2_delta(r1, xi1, 0, surface)
    q2 = _twice_r2_delta(r2, xi2, 0, surface)
    hi = math.floor(q1 / (2 * r1))
    lo = e.chi - math.floor(q2 / (2 * r2))
    return lo, hi


def chi_feasible(
    e: ChernVector, r1: int, xi1: DivClass, surface: RuledSurface
) -> Optional[tuple[int, int]]:
    """Closed integer interval of ``chi1`` keeping both discriminants ``>= 0``.

    Returns ``(chi_min, chi_max)`` or None when no integer works.
    """
    _check_split(e, r1)
    _check_integral(xi1)
    lo, hi = _chi_bounds(e, r1, xi1, surface)
    if lo > hi:
        return None
    return lo, hi


def clip_range(surface: RuledSurface, x_lo=None, x_hi=None, lo_closed=False, hi_closed=True) -> XRange:
    """Intersect ``(x_lo, x_hi)`` (closedness per flags) with the ample ray.

    ``x_lo=None`` starts at the boundary of the ample cone, ``x_hi=None`` is
    ``+infinity``.
    """
    t = ample_threshold(surface)
    lo = t if x_lo is None else as_fraction(x_lo)
    hi = None if x_hi is None else as_fraction(x_hi)
    if x_lo is None:
        lo_closed = False
    if hi is None:
        hi_closed = False
    if hi is not None and lo >= hi:
        raise InvalidInput(f"empty range: x_lo={lo} is not below x_hi={hi}")
    if lo <= t:
        lo, lo_closed = t, False
    if hi is not None and (hi < lo or (hi == lo and not (lo_closed and hi_closed))):
        raise InvalidInput(f"range contains no ample polarization H(x) (need x > {t})")
    return XRange(lo, hi, lo_closed, hi_closed)


def _primitive_direction(A: int, B: int) -> DivClass:
    g = math.gcd(A, B)
    A, B = A // g, B // g
    if A < 0:
        A, B = -A, -B
    return DivClass(A, B)


def _candidates(e: ChernVector, r1: int, surface: RuledSurface, bound: int):
    """Yield ``(a1, b1, x_w, (A, B))`` for integral sub-classes passing the bound."""
    r = e.r
    a, b = int(e.xi.a), int(e.xi.b)
    ev = surface.invariant
    for k in range(1, bound + 1):
        for A_abs in _divisors(k):
            C_abs = k // A_abs
            for A, C in ((A_abs, -C_abs), (-A_abs, C_abs)):
                twoB = C + ev * A
                if twoB % 2:
                    continue
                B = twoB // 2
                num_a, num_b = A + r1 * a, B + r1 * b
                if num_a % r or num_b % r:
                    continue
                yield num_a // r, num_b // r, Fraction(ev) - Fraction(B, A), (A, B)


def _divisors(n: int):
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def enumerate_walls(
    e: ChernVector,
    surface: RuledSurface,
    x_lo=None,
    x_hi=None,
    *,
    lo_closed: bool = False,
    hi_closed: bool = True,
) -> list[Wall]:
    """All numerical walls for ``e`` on the ample part of ``[x_lo, x_hi]``.

    The default range is open at ``x_lo`` and closed at ``x_hi``; a wall at a
    closed end is included. Walls are sorted by ``x`` and witnesses sharing a
    point are merged into one :class:`Wall`.

    >>> S = RuledSurface(1, 0)
    >>> [str(w.x) for w in enumerate_walls(ChernVector.of(2, 1, 1, 0), S, 0, 4)]
    ['1/3', '1', '3']
    """
    rng = x_lo if isinstance(x_lo, XRange) else clip_range(surface, x_lo, x_hi, lo_closed, hi_closed)
    twice = _twice_r2_delta(e.r, e.xi, e.chi, surface)
    if twice <= 0:
        return []
    twice = int(twice)
    found: dict[Fraction, list] = {}
    for r1 in range(1, e.r):
        bound = twice * r1 * (e.r - r1)
        for a1, b1, x_w, AB in _candidates(e, r1, surface, bound):
            if x_w not in rng or not is_ample(surface, polarization(x_w)):
                continue
            xi1 = DivClass(a1, b1)
            lo_hi = chi_feasible(e, r1, xi1, surface)
            if lo_hi is None:
                continue
            entry = found.setdefault(x_w, [AB, []])
            entry[1].append(WallWitness(r1, (a1, b1), lo_hi[0], lo_hi[1]))
    walls = []
    for x_w in sorted(found):
        (A, B), wits = found[x_w]
        walls.append(Wall(x_w, _primitive_direction(A, B), tuple(sorted(wits))))
    return walls


def chambers(
    e: ChernVector,
    surface: RuledSurface,
    x_lo=None,
    x_hi=None,
    *,
    lo_closed: bool = False,
    hi_closed: bool = True,
) -> ChamberDecomposition:
    """Walls in range plus the open intervals between them.

    With ``x_hi=None`` the last chamber is unbounded (``hi is None``).
    """
    rng = clip_range(surface, x_lo, x_hi, lo_closed, hi_closed)
    walls = enumerate_walls(e, surface, rng)
    cuts = [w.x for w in walls]
    pieces = []
    lo, lo_c = rng.lo, rng.lo_closed
    for x in cuts:
        if x == rng.lo:
            lo_c = False
            continue
        pieces.append(Chamber(lo, x, lo_c, False))
        lo, lo_c = x, False
    if rng.hi is None or lo < rng.hi:
        pieces.append(Chamber(lo, rng.hi, lo_c, rng.hi_closed and lo != rng.hi))
    return ChamberDecomposition(rng, tuple(walls), tuple(pieces))


def wall_direction_checks(wall: Wall, surface: RuledSurface) -> bool:
    """Structural sanity of a wall: orthogonal to ``H(x_w)``, negative square, normalized."""
    z = wall.zeta
    return (
        intersect(z, polarization(wall.x), surface) == 0
        and intersect(z, z, surface) < 0
        and z.a > 0
        and z.integral
        and math.gcd(int(z.a), int(z.b)) == 1
    )

