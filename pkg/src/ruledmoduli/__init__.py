"""Exact numerics for moduli of mu-semistable sheaves on ruled surfaces.

Surfaces, classes and Chern vectors are exact (``fractions.Fraction``);
no floating point is used anywhere.
"""

from .exceptions import InvalidInput, UnsupportedHypothesis
from .invariants import (
    ChernVector,
    ExtensionData,
    c2,
    discriminant,
    euler_pairing,
    gcd_divisibility,
    normalize_fiber_degree,
    slope_H,
    slope_vec,
    twist,
    vector_sum,
)
from .moduli import (
    FiltrationKind,
    FiltrationType,
    Report,
    classify_filtration,
    construct_general,
    exists_mu_ss,
    exists_nef_anticanonical,
    filtration_stack_dim,
    hn_wall_codim_positive,
    moduli_report,
    non_lf_codim,
    stack_dim,
)
from .surface_lattice import (
    C0,
    FIBER,
    ZERO,
    DivClass,
    RuledSurface,
    canonical,
    intersect,
    is_ample,
    k_dot_h,
    polarization,
)
from .walls import Chamber, ChamberDecomposition, Wall, WallWitness, chambers, chi_feasible, enumerate_walls, wall_of

__version__ = "0.1.0"
