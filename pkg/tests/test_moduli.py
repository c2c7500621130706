import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ruledmoduli.exceptions import InvalidInput, UnsupportedHypothesis
from ruledmoduli.invariants import ChernVector, discriminant, euler_pairing, twist
from ruledmoduli.moduli import (
    FiltrationKind,
    FiltrationType,
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
from ruledmoduli.surface_lattice import C0, RuledSurface, ample_threshold
from ruledmoduli.walls import enumerate_walls

E0 = RuledSurface(1, 0)
EM1 = RuledSurface(1, -1)
V = ChernVector.of


def test_stack_dim():
    assert stack_dim(V(2, 1, 1, 1), E0, F(1, 2)) == 2
    assert stack_dim(V(2, 1, 1, 0), E0, F(1, 2)) == 6
    assert stack_dim(V(1, 0, 0, 0), E0, 5) == 0


def test_stack_dim_refusals():
    with pytest.raises(InvalidInput):
        stack_dim(V(2, 1, 1, 1), E0, 0)
    # g = 3, e = 0: (K.H(x)) = 4 - 2x >= 0 for x <= 2
    with pytest.raises(UnsupportedHypothesis) as info:
        stack_dim(V(2, 1, 1, 1), RuledSurface(3, 0), 1)
    assert "(K_X . H) < 0" in str(info.value)
    assert stack_dim(V(2, 1, 1, 1), RuledSurface(3, 0), 3) is not None


def test_filtration_stack_dim():
    ft = FiltrationType([V(1, 1, 0, 0), V(1, 0, 1, 0)])
    assert filtration_stack_dim(ft, E0) == (5, 1)
    e = V(2, 1, 1, 0)
    assert filtration_stack_dim(FiltrationType([e]), E0) == (stack_dim(e, E0, 1), 0)
    with pytest.raises(InvalidInput):
        FiltrationType([])


def test_classify_filtration():
    parts = [V(1, 1, 0, 0), V(1, 0, 1, 0)]
    assert classify_filtration(FiltrationType(parts), F(1, 2), E0) is FiltrationKind.NEITHER
    assert classify_filtration(FiltrationType(parts[::-1]), F(1, 2), E0) is FiltrationKind.HN
    assert classify_filtration(FiltrationType(parts), 1, E0) is FiltrationKind.JH
    assert classify_filtration(FiltrationType(parts[:1]), 3, E0) is FiltrationKind.JH


def test_hn_wall_codim_positive():
    cert = hn_wall_codim_positive(FiltrationType([V(1, 1, 0, 0), V(1, 0, 1, 0)]), 1, E0)
    assert cert.holds and cert.side == "above"
    assert cert.pairings == ((0, 1, -1),)
    assert cert.filtration_dim == 5 < cert.bound == 6

    cert = hn_wall_codim_positive(FiltrationType([V(1, 0, 1, 0), V(1, 1, 0, 0)]), 1, E0)
    assert cert.holds and cert.side == "below" and cert.pairings == ((0, 1, -3),)

    cert = hn_wall_codim_positive(FiltrationType([V(1, 1, 0, -1), V(1, 0, 1, 1)]), 1, E0)
    assert cert.holds
    (_, _, chi), = cert.pairings
    d1, d2 = discriminant(V(1, 1, 0, -1), E0), discriminant(V(1, 0, 1, 1), E0)
    # here (D^2 - D.K) vanishes for D = f - C0, so -chi = g - 1 + Delta1 + Delta2
    assert (d1, d2) == (1, 0) and chi == -(d1 + d2)
    with pytest.raises(InvalidInput):
        hn_wall_codim_positive(FiltrationType([V(1, 1, 0, 0), V(1, 0, 1, 0)]), 2, E0)


def test_exists_mu_ss():
    v = exists_mu_ss(V(2, 1, 1, 1), E0, 1)
    assert v.exists and v.x0 == 1 and v.lhs == v.rhs == 1
    assert not exists_mu_ss(V(2, 1, 1, 1), E0, F(3, 2))
    assert exists_mu_ss(V(2, 1, 0, 0), EM1, 1)
    assert not exists_mu_ss(V(2, 1, 0, 0), EM1, F(9, 8))
    assert exists_mu_ss(V(2, 1, 0, 0), EM1, 1).x0 == 1


def test_exists_refusals():
    with pytest.raises(UnsupportedHypothesis) as info:
        exists_mu_ss(V(2, 1, 1, 1), RuledSurface(2, 0), 3)
    assert "g = 1" in str(info.value)
    with pytest.raises(InvalidInput):
        exists_mu_ss(V(2, 1, 1, 1), E0, F(-1, 2))


def test_exists_normalizes():
    e = V(2, 1, 1, 1)
    t = twist(e, 3 * C0, E0)
    v = exists_mu_ss(t, E0, 1)
    assert v.twist_m == -3 and v.normalized == e and v.exists
    assert "twisted by -3*C0" in v.reason


def test_exists_flags_cited_for_positive_e():
    v = exists_mu_ss(V(2, 1, 3, 0), RuledSurface(1, 1), 2)
    assert v.via_cited_result


def test_exists_nef_anticanonical():
    assert exists_nef_anticanonical(V(2, 1, 1, 1), E0)
    assert not exists_nef_anticanonical(V(2, 1, 0, 0), E0)
    assert exists_nef_anticanonical(V(2, 2, 0, 0), E0)
    with pytest.raises(UnsupportedHypothesis):
        exists_nef_anticanonical(V(2, 1, 1, 1), RuledSurface(1, 1))
    with pytest.raises(UnsupportedHypothesis):
        exists_nef_anticanonical(V(2, 1, 1, 1), RuledSurface(0, 0))


def test_construct_general():
    assert construct_general(V(2, 1, 1, 1), E0).as_tuple() == (1, 0, 1, 1, 1)
    assert construct_general(V(2, 1, 1, 0), E0).as_tuple() == (1, -1, 1, 2, 3)
    assert construct_general(V(2, 1, 0, 0), EM1).as_tuple() == (1, -1, 1, 1, 1)
    with pytest.raises(InvalidInput):
        construct_general(V(2, 2, 0, 0), E0)
    with pytest.raises(InvalidInput):
        construct_general(V(2, 0, 0, 0), E0)


def test_non_lf_codim():
    assert [non_lf_codim(V(r, 0, 0, 0)) for r in (2, 1, 5)] == [1, 0, 4]


def test_report_range():
    rep = moduli_report(V(2, 1, 1, 1), E0, x_range=(0, 2))
    assert [w.x for w in rep.decomposition.walls] == [1]
    assert rep.exists and (rep.exists_region.lo, rep.exists_region.hi) == (0, 1)
    assert rep.exists_region.hi_closed
    assert rep.dim_stack == 2 and rep.dim_coarse == 3
    assert rep.flags["irreducible"].value
    assert rep.flags["coarse_fine_smooth_projective"].value
    assert rep.flags["generically_mu_stable_locally_free"].value
    assert rep.construction.as_tuple() == (1, 0, 1, 1, 1)
    assert [cv.exists for cv in rep.chamber_verdicts] == [True, False]
    assert rep.wall_verdicts == ((1, True),)


def test_report_points():
    rep = moduli_report(V(2, 1, 0, 0), E0, x=F(1, 2))
    assert rep.exists is False
    assert "Delta = 0" in rep.exists_reason and "2 does not divide 1" in rep.exists_reason
    assert rep.construction is None
    rep = moduli_report(V(1, 0, 0, 0), E0, x=1)
    assert rep.exists and rep.dim_stack == 0
    assert not rep.flags["generically_mu_stable_locally_free"].value


def test_report_other_genus():
    rep = moduli_report(V(2, 1, 1, 1), RuledSurface(0, 1), x=3)
    assert rep.exists is None and "unsupported" in rep.exists_reason
    assert rep.dim_stack == stack_dim(V(2, 1, 1, 1), RuledSurface(0, 1), 3)
    rep = moduli_report(V(2, 1, 1, 1), RuledSurface(3, 0), x=1)
    assert rep.dim_stack is None and not rep.flags["irreducible"].value


def test_report_errors():
    with pytest.raises(InvalidInput):
        moduli_report(V(2, 1, 1, 1), E0, x=0)
    with pytest.raises(InvalidInput):
        moduli_report(V(2, 1, 1, 1), E0, x=1, x_range=(0, 2))
    with pytest.raises(InvalidInput):
        moduli_report(V(2, 1, 1, 1), E0, x_range=(-1, 2))


def test_report_reproducible():
    a = moduli_report(V(3, 1, 2, -1), EM1, x_range=(F(-1, 2), 5))
    b = moduli_report(V(3, 1, 2, -1), EM1, x_range=(F(-1, 2), 5))
    assert a == b
    assert a.delta == discriminant(V(3, 1, 2, -1), EM1)


def test_threshold_is_largest_wall_on_fixtures():
    for S, vec in [(E0, (2, 1, 1, 0)), (E0, (2, 1, 1, 1)), (EM1, (2, 1, 0, 0)), (E0, (3, 1, 0, -1)), (EM1, (3, 2, 1, 0))]:
        e = V(*vec)
        x0 = construct_general(e, S).x0
        walls = enumerate_walls(e, S, F(S.e, 2), x0)
        assert walls and walls[-1].x == x0


surfaces_g1 = st.sampled_from([RuledSurface(1, e) for e in (-1, 0, 1, 2)])
vectors = st.builds(V, st.integers(1, 5), st.integers(-5, 5), st.integers(-5, 5), st.integers(-8, 8))


@settings(max_examples=200)
@given(vectors, surfaces_g1, st.integers(1, 40))
def test_boundary_semantics(e, S, k):
    ne = exists_mu_ss(e, S, ample_threshold(S) + 1)
    if ne.x0 is None or ne.x0 <= ample_threshold(S):
        return
    assert exists_mu_ss(e, S, ne.x0).exists
    assert not exists_mu_ss(e, S, ne.x0 + F(1, k)).exists


@given(vectors, surfaces_g1, st.fractions(min_value=F(1, 10), max_value=20, max_denominator=10))
def test_bogomolov_gate(e, S, t):
    if discriminant(e, S) < 0:
        assert not exists_mu_ss(e, S, ample_threshold(S) + t).exists


def test_jh_strata_smaller_when_some_delta_positive():
    rng = random.Random(17)
    hits = 0
    while hits < 100:
        e1 = V(rng.randint(1, 3), rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-4, 4))
        k = rng.randint(1, 2)
        # same slope class: e2 = k * e1 up to chi
        e2 = ChernVector(e1.r * k, e1.xi * k, rng.randint(-6, 6))
        if min(discriminant(e1, E0), discriminant(e2, E0)) < 0:
            continue
        if max(discriminant(e1, E0), discriminant(e2, E0)) == 0:
            continue
        hits += 1
        ft = FiltrationType([e1, e2])
        dim, codim = filtration_stack_dim(ft, E0)
        assert codim > 0
        assert dim < stack_dim(ft.total, E0, 3)
        assert -euler_pairing(e1, e2, E0) == e1.r * e2.r * (0 + discriminant(e1, E0) + discriminant(e2, E0))
