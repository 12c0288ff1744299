"""Ring laws, precision contracts and serialization of sparse series."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from jacobilift.errors import InexactDivisionError, ValidationError
from jacobilift.series import DEN2, DEN3, Series, series_from_dict, series_to_dict

KEYS2 = st.tuples(
    st.integers(min_value=-24, max_value=47), st.integers(min_value=-8, max_value=8)
)
COEFFS = st.integers(min_value=-9, max_value=9)


def series2(draw_terms, qprec=72):
    return Series(DEN2, draw_terms, qprec)


SERIES2 = st.dictionaries(KEYS2, COEFFS, max_size=6).map(series2)


@given(SERIES2, SERIES2)
def test_add_commutes(a, b):
    assert (a + b).terms == (b + a).terms


@given(SERIES2, SERIES2, SERIES2)
@settings(max_examples=60)
def test_add_associates(a, b, c):
    assert ((a + b) + c).terms == (a + (b + c)).terms


@given(SERIES2, SERIES2)
@settings(max_examples=60)
def test_mul_commutes(a, b):
    left, right = a * b, b * a
    assert left.terms == right.terms and left.qprec == right.qprec


@given(SERIES2, SERIES2, SERIES2)
@settings(max_examples=40)
def test_mul_distributes(a, b, c):
    lhs = a * (b + c)
    rhs = a * b + a * c
    prec = min(p for p in (lhs.qprec, rhs.qprec) if p is not None)
    assert lhs.same_terms(rhs, prec)


@given(SERIES2)
def test_additive_inverse(a):
    assert (a + (-a)).is_zero()


@given(SERIES2)
def test_one_is_neutral(a):
    one = Series.const(1, DEN2, None)
    assert (a * one).terms == a.terms


@given(SERIES2, SERIES2)
@settings(max_examples=60)
def test_mul_precision_rule(a, b):
    prod = a * b
    expected = min(a.qprec + b.min_nq(), b.qprec + a.min_nq())
    assert prod.qprec == expected
    assert all(k[0] < expected for k in prod.terms)


@given(SERIES2, SERIES2)
@settings(max_examples=40)
def test_exact_div_roundtrip(a, b):
    # force b to be monic at its minimal key so the division is exact
    terms = dict(b.terms)
    terms[(-24, 0)] = 1
    b = Series(DEN2, terms, b.qprec)
    prod = a * b
    quotient = prod.exact_div(b)
    assert quotient.same_terms(a, min(quotient.qprec, a.qprec))


@given(SERIES2)
def test_serialization_roundtrip(a):
    back = series_from_dict(series_to_dict(a))
    assert back == a


def test_serialization_roundtrip_three_vars():
    s = Series(DEN3, {(0, -4, 12): 3, (24, 0, 0): -1}, 48)
    assert series_from_dict(series_to_dict(s)) == s


def test_truncate_drops_high_orders():
    s = Series(DEN2, {(0, 0): 1, (24, 4): 2, (48, 0): 3}, 72)
    t = s.truncate(30)
    assert t.qprec == 30 and (48, 0) not in t.terms and (24, 4) in t.terms


def test_q_slice_beyond_precision_raises():
    from jacobilift.errors import PrecisionError

    s = Series(DEN2, {(0, 0): 1}, 24)
    with pytest.raises(PrecisionError):
        s.q_slice(24)


def test_inexact_division_raises():
    a = Series(DEN2, {(0, 0): 3}, 48)
    b = Series(DEN2, {(0, 0): 2, (24, 0): 1}, 48)
    with pytest.raises(InexactDivisionError):
        a.exact_div(b)


def test_mixed_denominator_arithmetic_rejected():
    a = Series(DEN2, {(0, 0): 1}, 24)
    b = Series(DEN3, {(0, 0, 0): 1}, 24)
    with pytest.raises(ValidationError):
        a + b


def test_scale_y_substitution():
    s = Series(DEN2, {(0, 4): 1, (24, -4): 2}, 48)
    t = s.scale_y(2)
    assert t.terms == {(0, 8): 1, (24, -8): 2}


def test_rational_promotion():
    from jacobilift.series import RING_Q

    s = Series(DEN2, {(0, 0): 2}, 24).promote(RING_Q)
    assert s.scale(Fraction(1, 2)).terms == {(0, 0): Fraction(1)}
    assert s.scale(Fraction(1, 2)).demote_to_int().terms == {(0, 0): 1}
