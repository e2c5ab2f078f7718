from __future__ import annotations

import json

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from quasijac.seriescore import (
    ZETA,
    CoefFn,
    FourierSeries,
    SubstitutionError,
    TruncationError,
    mono,
    series_from_json,
    series_to_json,
)
from quasijac.seriescore.cyclotomic import imaginary_unit

ORDER = 6


@st.composite
def laurent_series(draw, order=ORDER):
    """Series with Laurent-polynomial coefficients and exponents in (1/2)Z."""
    terms = {}
    for _ in range(draw(st.integers(0, 5))):
        e = mpq(draw(st.integers(0, 2 * order - 1)), 2)
        r = draw(st.integers(-3, 3))
        c = draw(st.integers(-5, 5))
        terms.setdefault(e, {})[mono(zeta=r)] = mpq(c)
    return FourierSeries({e: CoefFn(t) for e, t in terms.items()}, order)


def _as_dict(s: FourierSeries) -> dict:
    out = {}
    for e, c in s.terms.items():
        for m, v in c.num.items():
            out[(e, m[ZETA])] = v
    return out


def _naive_product(a: dict, b: dict, order) -> dict:
    out: dict = {}
    for (e1, r1), c1 in a.items():
        for (e2, r2), c2 in b.items():
            if e1 + e2 < order:
                key = (e1 + e2, r1 + r2)
                out[key] = out.get(key, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


@settings(max_examples=60, deadline=None)
@given(laurent_series(), laurent_series())
def test_product_matches_naive_convolution(a, b):
    prod = a * b
    # known window: each factor's error term times the other's lowest term
    assert prod.order == min(ORDER + a.valuation(), ORDER + b.valuation())
    assert _as_dict(prod) == _naive_product(_as_dict(a), _as_dict(b), prod.order)


@settings(max_examples=60, deadline=None)
@given(laurent_series(), laurent_series(), laurent_series())
def test_ring_laws(a, b, c):
    assert ((a + b) * c).equals(a * c + b * c)
    assert (a * b).equals(b * a)
    assert (a - a).is_zero()


@settings(max_examples=40, deadline=None)
@given(laurent_series())
def test_inverse_of_a_unit(a):
    unit = FourierSeries.const(1, ORDER) + a.shift(1)
    assert (unit * unit.inverse()).equals(FourierSeries.const(1, ORDER))


@settings(max_examples=40, deadline=None)
@given(laurent_series())
def test_json_round_trip_is_exact_and_stable(a):
    text = series_to_json(a)
    back = series_from_json(text)
    assert back.equals(a) and back.order == a.order
    assert series_to_json(back) == text
    json.loads(text)


def test_fractional_exponents_add():
    a = FourierSeries.monomial(mpq(1, 2), order=3)
    b = FourierSeries.monomial(mpq(1, 3), order=3)
    assert (a * b).exponents() == [mpq(5, 6)]


def test_truncation_is_the_smaller_order():
    a = FourierSeries.const(1, 4)
    b = FourierSeries.const(1, 2)
    assert (a + b).order == 2 and (a * b).order == 2


def test_negative_valuation_lowers_the_product_order():
    a = FourierSeries.monomial(-1, order=4)
    b = FourierSeries.const(1, 4)
    assert (a * b).order == 3


def test_coefficient_beyond_the_window_raises():
    with pytest.raises(TruncationError):
        FourierSeries.const(1, 2).coefficient(2)


def test_first_difference_reports_lowest_exponent():
    a = FourierSeries({0: 1, 1: 2, 2: 3}, 4)
    b = FourierSeries({0: 1, 1: 5, 2: 4}, 4)
    e, x, y = a.first_difference(b)
    assert e == 1 and x.constant_value() == 2 and y.constant_value() == 5


def test_q_shift_needs_a_support_certificate():
    s = FourierSeries.monomial(0, mono(zeta=1), order=4)
    with pytest.raises(SubstitutionError):
        s.substitute(ZETA, qshift=1)


def test_q_shift_with_certificate():
    # sum zeta^r q^(r^2) has r^2 <= 4 (1/4) n; zeta -> zeta q gives sum zeta^r q^(r^2 + r)
    order = 16
    s = FourierSeries.zero(order)
    expected = FourierSeries.zero(12)
    for r in range(-5, 6):
        s = s + FourierSeries.monomial(r * r, mono(zeta=r), order=order)
        expected = expected + FourierSeries.monomial(r * r + r, mono(zeta=r), order=12)
    out = s.substitute(ZETA, qshift=1, support=(mpq(1, 4), 0))
    assert out.order == 12
    assert out.equals(expected)


def test_substitute_with_phase_flips_odd_terms():
    s = FourierSeries({0: CoefFn({mono(zeta=1): mpq(1), mono(zeta=2): mpq(1)})}, 1)
    out = s.substitute(ZETA, turn=mpq(1, 2))
    assert out.extract(0, mono(zeta=1)) == -1
    assert out.extract(0, mono(zeta=2)) == 1


def test_cyclotomic_scalars_serialize():
    s = FourierSeries.const(imaginary_unit(), 2)
    back = series_from_json(series_to_json(s))
    assert back.equals(s)


def test_derivatives():
    s = FourierSeries({mpq(3, 2): CoefFn.monomial(mono(zeta=2), 5)}, 4)
    assert s.derive_q().extract(mpq(3, 2), mono(zeta=2)) == mpq(15, 2)
    assert s.derive(ZETA).extract(mpq(3, 2), mono(zeta=2)) == 10
