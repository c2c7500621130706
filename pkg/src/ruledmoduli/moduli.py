"""Dimensions, existence criteria and general members for moduli of sheaves.

Everything here is numerical: sheaves and stacks are never constructed,
only the invariants that decide non-emptiness and dimensions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exceptions import InvalidInput, UnsupportedHypothesis
from .invariants import (
    ChernVector,
    ExtensionData,
    discriminant,
    euler_pairing,
    gcd_divisibility,
    normalize_fiber_degree,
    slope_H,
    vector_sum,
)
from .surface_lattice import (
    RuledSurface,
    ample_threshold,
    as_fraction,
    is_ample,
    k_dot_h,
    polarization,
)
from .walls import ChamberDecomposition, XRange, chambers, clip_range

__all__ = [
    "FiltrationType",
    "FiltrationKind",
    "WallCodimCertificate",
    "ExistenceVerdict",
    "Flag",
    "Report",
    "stack_dim",
    "filtration_stack_dim",
    "classify_filtration",
    "hn_wall_codim_positive",
    "exists_mu_ss",
    "exists_nef_anticanonical",
    "construct_general",
    "non_lf_codim",
    "moduli_report",
]

GENUS_ONE = "an elliptic ruled surface (g = 1)"
NEGATIVE_KH = "(K_X . H) < 0"


def _require_ample(surface: RuledSurface, x) -> Fraction:
    x = as_fraction(x)
    if not is_ample(surface, polarization(x)):
        raise InvalidInput(
            f"H({x}) = C0 + {x}f is not ample on {surface} (need x > {ample_threshold(surface)})"
        )
    return x


@dataclass(frozen=True)
class FiltrationType:
    """Chern vectors of the graded pieces ``F_i / F_{i-1}`` of a filtration."""

    parts: tuple[ChernVector, ...]

    def __init__(self, parts):
        parts = tuple(parts)
        if not parts:
            raise InvalidInput("a filtration type needs at least one part")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self) -> ChernVector:
        return vector_sum(*self.parts)

    def __len__(self):
        return len(self.parts)


class FiltrationKind(enum.Enum):
    HN = "HN"
    JH = "JH"
    NEITHER = "neither"


def stack_dim(e: ChernVector, surface: RuledSurface, x) -> Fraction:
    """Dimension ``2 r^2 Delta - r^2 chi(O_X)`` of the mu-semistable stack.

    Only valid (the stack is then smooth of this dimension) when
    ``(K_X . H(x)) < 0``; otherwise the value is merely a lower bound for
    every component and the call is refused.
    """
    x = _require_ample(surface, x)
    kh = k_dot_h(surface, x)
    if kh >= 0:
        raise UnsupportedHypothesis(
            NEGATIVE_KH,
            "the smooth stack dimension formula",
            f"(K_X . H({x})) = {kh}; only dim >= 2r^2 Delta - r^2 chi(O_X) holds for each component",
        )
    return _expected_dim(e, surface)


def _expected_dim(e: ChernVector, surface: RuledSurface) -> Fraction:
    return 2 * e.r**2 * discriminant(e, surface) - e.r**2 * surface.chi_O


def filtration_stack_dim(ftype: FiltrationType, surface: RuledSurface) -> tuple[Fraction, Fraction]:
    """Dimension of the stack of filtrations of a given type.

    Returns ``(dim, codim_term)`` where ``codim_term = -sum_{i<j} chi(e_i, e_j)``
    so that ``dim = 2 r^2 Delta(e) - r^2 chi(O_X) - codim_term``.
    """
    parts = ftype.parts
    pairing = sum(
        (euler_pairing(parts[i], parts[j], surface) for i in range(len(parts)) for j in range(i + 1, len(parts))),
        Fraction(0),
    )
    return _expected_dim(ftype.total, surface) + pairing, -pairing


def classify_filtration(ftype: FiltrationType, x, surface: RuledSurface) -> FiltrationKind:
    """HN if ``H(x)``-slopes strictly decrease, JH if all equal."""
    x = _require_ample(surface, x)
    slopes = [slope_H(p, x, surface) for p in ftype.parts]
    if all(s == slopes[0] for s in slopes):
        return FiltrationKind.JH
    if all(s > t for s, t in zip(slopes, slopes[1:])):
        return FiltrationKind.HN
    return FiltrationKind.NEITHER


@dataclass(frozen=True)
class WallCodimCertificate:
    holds: bool
    side: str  # "below" or "above": chamber where the type is the HN type
    pairings: tuple[tuple[int, int, Fraction], ...]
    filtration_dim: Fraction
    bound: Fraction

    def __bool__(self):
        return self.holds


def hn_wall_codim_positive(ftype: FiltrationType, x_wall, surface: RuledSurface) -> WallCodimCertificate:
    """Certify that a wall-crossing stratum has smaller dimension than the stack.

    ``ftype`` must be Jordan-Holder at ``x_wall`` and Harder-Narasimhan just
    off the wall, which on the ray means the fiber slopes ``(xi_i.f)/r_i``
    are strictly monotone: increasing for the side below the wall, decreasing
    for the side above. The certificate lists ``chi(e_i, e_j)`` for ``i < j``;
    the verdict is ``-chi(e_i, e_j) > 0`` for every pair, which gives
    ``dim < 2 r^2 Delta + r^2 (g - 1)``. Below the wall with ``g >= 1`` this
    always holds.
    """
    x_wall = _require_ample(surface, x_wall)
    parts = ftype.parts
    if len(parts) < 2:
        raise InvalidInput("a wall stratum needs at least two graded pieces")
    if classify_filtration(ftype, x_wall, surface) is not FiltrationKind.JH:
        raise InvalidInput(f"pieces do not have equal H({x_wall})-slopes; not a wall type")
    fslopes = [Fraction(p.fiber_degree, p.r) for p in parts]
    if all(s < t for s, t in zip(fslopes, fslopes[1:])):
        side = "below"
    elif all(s > t for s, t in zip(fslopes, fslopes[1:])):
        side = "above"
    else:
        raise InvalidInput("fiber slopes are not strictly monotone; not an HN type next to the wall")
    pairings = tuple(
        (i, j, euler_pairing(parts[i], parts[j], surface))
        for i in range(len(parts))
        for j in range(i + 1, len(parts))
    )
    dim, _ = filtration_stack_dim(ftype, surface)
    total = ftype.total
    bound = 2 * total.r**2 * discriminant(total, surface) + total.r**2 * (surface.genus - 1)
    holds = all(chi < 0 for _, _, chi in pairings)
    return WallCodimCertificate(holds, side, pairings, dim, bound)


@dataclass(frozen=True)
class ExistenceVerdict:
    exists: bool
    reason: str
    delta: Fraction
    normalized: ChernVector
    twist_m: int
    r1: int
    x: Optional[Fraction] = None
    x0: Optional[Fraction] = None
    lhs: Optional[Fraction] = None  # r^2 Delta
    rhs: Optional[Fraction] = None  # r1 r2 (x - e/2)
    via_cited_result: bool = False

    def __bool__(self):
        return self.exists

    def inequality(self) -> str:
        if self.lhs is None:
            return ""
        op = ">=" if self.exists else "<"
        return f"r^2*Delta = {self.lhs} {op} r1*r2*(x - e/2) = {self.rhs}"


def _require_genus_one(surface: RuledSurface, result: str):
    if surface.genus != 1:
        raise UnsupportedHypothesis(GENUS_ONE, result, f"got g = {surface.genus}")


def exists_mu_ss(e: ChernVector, surface: RuledSurface, x) -> ExistenceVerdict:
    """Decide non-emptiness of the mu-semistable stack for ``H(x)`` when ``g = 1``.

    After twisting to ``0 <= r1 = (xi.f) < r`` the answer is
    ``r^2 Delta >= r1 (r - r1) (x - e/2)``; for ``r1 = 0`` this is just
    ``Delta >= 0``. For ``e > 0`` the same criterion holds by an earlier
    result on ruled surfaces with ``e > 2g - 2``; the verdict is flagged.
    """
    _require_genus_one(surface, "the mu-semistable existence criterion")
    x = _require_ample(surface, x)
    ne, m = normalize_fiber_degree(e, surface)
    delta = discriminant(ne, surface)
    r, r1 = ne.r, ne.fiber_degree
    r2 = r - r1
    half_e = Fraction(surface.invariant, 2)
    cited = surface.invariant > 0
    tw = f"twisted by {m}*C0" if m else "already normalized"
    if r1 == 0:
        ok = delta >= 0
        reason = f"Delta = {delta}, r1 = 0 ({tw}): non-empty iff Delta >= 0"
        if not ok:
            reason += " (Bogomolov)"
        return ExistenceVerdict(ok, reason, delta, ne, m, 0, x, via_cited_result=cited)
    lhs = r * r * delta
    rhs = r1 * r2 * (x - half_e)
    x0 = half_e + lhs / (r1 * r2)
    ok = lhs >= rhs
    reason = f"Delta = {delta}, r1 = {r1} ({tw}), threshold x0 = {x0}"
    if delta == 0:
        reason += f"; Delta = 0 forces r | (xi.f), but {r} does not divide {r1}"
    elif delta < 0:
        reason += " (Bogomolov inequality fails)"
    return ExistenceVerdict(ok, reason, delta, ne, m, r1, x, x0, lhs, rhs, cited)


def exists_nef_anticanonical(e: ChernVector, surface: RuledSurface) -> ExistenceVerdict:
    """Non-emptiness for polarizations near ``-K_X`` when ``-K_X`` is nef.

    Requires ``g = 1`` and ``e in {0, -1}``. Non-empty iff ``Delta > 0``, or
    ``Delta = 0`` and ``r`` divides ``(xi.f)``.
    """
    result = "the nef anticanonical existence criterion"
    _require_genus_one(surface, result)
    if surface.invariant not in (0, -1):
        raise UnsupportedHypothesis("-K_X nef (e = 0 or e = -1)", result, f"got e = {surface.invariant}")
    ne, m = normalize_fiber_degree(e, surface)
    delta = discriminant(e, surface)
    divides = e.fiber_degree % e.r == 0
    ok = delta > 0 or (delta == 0 and divides)
    if delta > 0:
        reason = f"Delta = {delta} > 0"
    elif delta == 0:
        rel = "divides" if divides else "does not divide"
        reason = f"Delta = 0 and r = {e.r} {rel} (xi.f) = {e.fiber_degree}"
    else:
        reason = f"Delta = {delta} < 0 (Bogomolov)"
    return ExistenceVerdict(ok, reason, delta, ne, m, ne.fiber_degree)


def construct_general(e: ChernVector, surface: RuledSurface) -> ExtensionData:
    """Invariants of the extension ``0 -> F1(C0) -> E -> F2 -> 0`` realizing ``e``.

    Input must be normalized with ``0 < r1 = (xi.f) < r``, so ``xi = r1 C0 + d f``.
    ``F1``, ``F2`` are pulled back from semistable bundles on the base of
    degrees ``d1 = r1 e - d + chi - (r + r1)(1 - g)`` and ``d - d1``.
    """
    _require_genus_one(surface, "the extension construction of a general member")
    r, r1 = e.r, e.fiber_degree
    if not 0 < r1 < r:
        raise InvalidInput(f"need 0 < (xi.f) < r for the extension construction, got (xi.f) = {r1}, r = {r}")
    g, ev = surface.genus, surface.invariant
    d = int(e.xi.b)
    r2 = r - r1
    d1 = r1 * ev - d + e.chi - (r + r1) * (1 - g)
    d2 = d - d1
    x0 = Fraction(ev, 2) + r * r * discriminant(e, surface) / (r1 * r2)
    if d + d1 + (r + r1) * (1 - g) - r1 * ev != e.chi:  # pragma: no cover
        raise ArithmeticError("Euler characteristic of the extension does not match")
    if x0 != ev + Fraction(r1 * d - r * d1, r1 * r2):  # pragma: no cover
        raise ArithmeticError("equal-slope point of the extension does not match the threshold")
    return ExtensionData(r1, d1, r2, d2, x0)


def non_lf_codim(e: ChernVector) -> int:
    """Codimension ``r - 1`` of the non-locally-free locus in the mu-stable stack."""
    return e.r - 1


@dataclass(frozen=True)
class Flag:
    value: bool
    hypothesis: str


@dataclass(frozen=True)
class ChamberVerdict:
    chamber: XRange
    sample: Fraction
    exists: Optional[bool]


@dataclass(frozen=True)
class Report:
    surface: RuledSurface
    vector: ChernVector
    query: XRange
    normalized: ChernVector
    twist_m: int
    delta: Fraction
    gcd: int
    kh_negative: bool
    dim_stack: Optional[Fraction]
    dim_coarse: Optional[Fraction]
    exists: Optional[bool]
    exists_reason: str
    exists_region: Optional[XRange]
    x0: Optional[Fraction]
    decomposition: ChamberDecomposition
    chamber_verdicts: tuple[ChamberVerdict, ...]
    wall_verdicts: tuple[tuple[Fraction, Optional[bool]], ...]
    flags: dict = field(default_factory=dict)
    construction: Optional[ExtensionData] = None
    non_lf_codim: int = 0
    notes: tuple[str, ...] = ()


def _query_range(surface, x=None, x_range=None) -> XRange:
    if (x is None) == (x_range is None):
        raise InvalidInput("give exactly one of a point x or a range")
    if x is not None:
        x = _require_ample(surface, x)
        return XRange(x, x, True, True)
    if isinstance(x_range, XRange):
        lo, hi, lo_c, hi_c = x_range.lo, x_range.hi, x_range.lo_closed, x_range.hi_closed
    else:
        lo, hi = x_range
        lo_c, hi_c = False, True
    if lo is not None:
        lo = as_fraction(lo)
        if lo < ample_threshold(surface) or (lo == ample_threshold(surface) and lo_c):
            raise InvalidInput(f"range starts below the ample cone (need x > {ample_threshold(surface)})")
    return clip_range(surface, lo, hi, lo_c, hi_c)


def moduli_report(e: ChernVector, surface: RuledSurface, x=None, x_range=None) -> Report:
    """Collect every verdict for ``e`` at a point ``x`` or over a range of the ray.

    The range may be a pair ``(lo, hi)`` (open at ``lo``, closed at ``hi``,
    ``hi=None`` for unbounded) or an :class:`~ruledmoduli.walls.XRange`.
    """
    q = _query_range(surface, x, x_range)
    ne, m = normalize_fiber_degree(e, surface)
    delta = discriminant(e, surface)
    gcd = gcd_divisibility(e)
    notes = []

    # (K.H) decreases along the ray, so checking the lower end suffices
    kh_lo = k_dot_h(surface, q.lo)
    kh_negative = kh_lo < 0 or (kh_lo == 0 and not q.lo_closed)
    dim = _expected_dim(e, surface) if kh_negative else None
    if dim is None:
        notes.append(
            "(K_X . H) < 0 fails somewhere on the query; only the lower bound "
            f"2r^2 Delta - r^2 chi(O_X) = {_expected_dim(e, surface)} holds per component"
        )

    if q.lo == q.hi:
        decomp = chambers(e, surface, None, None)
    else:
        decomp = chambers(e, surface, q.lo, q.hi, lo_closed=q.lo_closed, hi_closed=q.hi_closed)

    exists = region = x0 = None
    reason = ""
    chamber_verdicts, wall_verdicts = [], []
    construction = None
    if surface.genus == 1:
        probe = q.lo if q.lo == q.hi else (q.hi if q.hi is not None else q.lo + 1)
        first = exists_mu_ss(e, surface, probe)
        x0 = first.x0
        if q.lo == q.hi:
            exists, reason = first.exists, first.reason
            if first.lhs is not None:
                reason += "; " + first.inequality()
        else:
            region = _existence_region(first, q)
            exists = region is not None
            reason = first.reason
        for c in decomp.chambers:
            s = c.sample()
            chamber_verdicts.append(ChamberVerdict(c, s, exists_mu_ss(e, surface, s).exists))
        for w in decomp.walls:
            wall_verdicts.append((w.x, exists_mu_ss(e, surface, w.x).exists))
        if first.via_cited_result:
            notes.append("existence for e > 0 rests on the earlier criterion for e > 2g - 2, not re-derived here")
        if 0 < ne.fiber_degree < ne.r and x0 > ample_threshold(surface):
            construction = construct_general(ne, surface)
    else:
        reason = f"unsupported: existence criterion requires {GENUS_ONE}"

    flags = {
        "irreducible": Flag(kh_negative, NEGATIVE_KH),
        "generically_mu_stable_locally_free": Flag(
            surface.genus == 1 and e.r > 1 and bool(exists), "g = 1, r > 1, non-empty"
        ),
        "fiber_restriction_rigid": Flag(
            surface.genus == 1 and e.r > 1 and bool(exists), "g = 1, r > 1, non-empty"
        ),
        "coarse_fine_smooth_projective": Flag(gcd == 1 and kh_negative, f"gcd(r, xi, chi) = 1 and {NEGATIVE_KH}"),
    }
    dim_coarse = None
    if dim is not None:
        dim_coarse = dim + 1
        notes.append("coarse dimension = stack dimension + 1 on the stable locus (scalar automorphisms); a convention")
    return Report(
        surface=surface,
        vector=e,
        query=q,
        normalized=ne,
        twist_m=m,
        delta=delta,
        gcd=gcd,
        kh_negative=kh_negative,
        dim_stack=dim,
        dim_coarse=dim_coarse,
        exists=exists,
        exists_reason=reason,
        exists_region=region,
        x0=x0,
        decomposition=decomp,
        chamber_verdicts=tuple(chamber_verdicts),
        wall_verdicts=tuple(wall_verdicts),
        flags=flags,
        construction=construction,
        non_lf_codim=non_lf_codim(e),
        notes=tuple(notes),
    )


def _existence_region(v: ExistenceVerdict, q: XRange) -> Optional[XRange]:
    # existence is downward closed along the ray: the region is q cut at x0
    if v.r1 == 0:
        return q if v.delta >= 0 else None
    x0 = v.x0
    if x0 < q.lo or (x0 == q.lo and not q.lo_closed):
        return None
    if q.hi is not None and x0 >= q.hi:
        return q
    return XRange(q.lo, x0, q.lo_closed, True)
