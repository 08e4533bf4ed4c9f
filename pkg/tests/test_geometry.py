import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthoint.geometry import (DomainError, OrthoTriple, bavard_upper_bound, eta_sequence,
                               hexagon_opposite_cosh_sq, markoff_verify, pants_boundary,
                               strictly_increasing, torus_boundary_length, torus_boundary_trace,
                               torus_oi_lower_bound_exact, torus_osys_bounds, trace_sq_to_length)
from orthoint.golden import pants_list, tori_list

cosh_val = st.fractions(min_value=Fraction(11, 10), max_value=50, max_denominator=30)


def test_triple_parsing():
    t = OrthoTriple.parse("3/2, 3/2,3/2")
    assert t.astuple() == (Fraction(3, 2),) * 3
    assert str(OrthoTriple.of(2, 2, 17)) == "(2,2,17)"
    assert not t.is_integral()


@pytest.mark.parametrize("bad", ["1,2,2", "2,2", "0,5,5", "2,2,1/2"])
def test_triple_domain(bad):
    with pytest.raises(ValueError):
        OrthoTriple.parse(bad)


@settings(max_examples=100, deadline=None)
@given(cosh_val, cosh_val, cosh_val)
def test_hexagon_identity_against_float_trig(x, y, z):
    # cosh of the side opposite z, from lengths rather than cosh values
    A, B = math.acosh(x), math.acosh(y)
    want = (math.cosh(A) * math.cosh(B) + float(z)) / (math.sinh(A) * math.sinh(B))
    got = hexagon_opposite_cosh_sq(x, y, z)
    assert math.isclose(float(got), want * want, rel_tol=1e-9)


def test_pants_222_boundary():
    bd = pants_boundary(OrthoTriple.of(2, 2, 2))
    assert bd.trace_squares == (16, 16, 16)
    assert math.isclose(bd.lengths[0], 2 * math.acosh(2), rel_tol=1e-12)
    assert math.isclose(trace_sq_to_length(Fraction(16)), 2.6339157938, rel_tol=1e-9)


def test_torus_222_boundary():
    t = OrthoTriple.of(2, 2, 2)
    assert torus_boundary_trace(t) == 52
    assert math.isclose(torus_boundary_length(t), 2 * math.acosh(26), rel_tol=1e-12)


@pytest.mark.parametrize("trip", pants_list())
def test_eta_growth(trip):
    t = OrthoTriple.of(*trip)
    tau = pants_boundary(t).trace_sq_alpha
    seq = eta_sequence(t, 30)
    assert strictly_increasing(seq)
    # growth ratio stays at or above the dominant root lam of x^2-(tau-2)x+1,
    # the limit of the ratios; exact test: r > (tau-2)/2 and r^2-(tau-2)r+1 >= 0
    for k in range(1, 31):
        r = seq[k] / seq[k - 1]
        assert 2 * r > tau - 2 and r * r - (tau - 2) * r + 1 >= 0
    assert all(x.denominator == 1 for x in seq)


def test_eta_222_examples():
    assert eta_sequence(OrthoTriple.of(2, 2, 2), 2) == [17, 287, 4049]


def test_eta_rejects_negative_k():
    with pytest.raises(ValueError):
        eta_sequence(OrthoTriple.of(2, 2, 2), -1)


@pytest.mark.parametrize("trip", tori_list())
def test_markoff_rows_hold(trip):
    rep = markoff_verify(OrthoTriple.of(*trip))
    assert rep.ok, rep.reason
    x, y, z = rep.squares
    assert x + y + z - rep.product == rep.constant
    assert rep.product ** 2 == x * y * z


def test_markoff_222():
    rep = markoff_verify(OrthoTriple.of(2, 2, 2))
    assert rep.constant == -50 and rep.squares == (25, 25, 25) and rep.product == 125


def test_markoff_reports_non_integral():
    rep = markoff_verify(OrthoTriple.of(2, 3, 4))
    assert not rep.ok


def test_bavard_bound_limits():
    vals = [bavard_upper_bound(L, 1, 1) for L in (1, 5, 20, 80)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert vals[-1] > 1
    with pytest.raises(DomainError):
        bavard_upper_bound(1.0, 0, 2)
    with pytest.raises(DomainError):
        bavard_upper_bound(0.0, 1, 1)


def test_torus_osys_bounds_order():
    lo, hi = torus_osys_bounds(torus_boundary_length(OrthoTriple.of(2, 2, 2)), oi=True)
    assert lo < hi
    half = torus_boundary_trace(OrthoTriple.of(2, 2, 2)) / 2
    assert torus_oi_lower_bound_exact(OrthoTriple.of(2, 2, 2)) == 5 / (half - 1) + 1
