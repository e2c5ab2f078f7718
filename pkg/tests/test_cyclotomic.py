from __future__ import annotations

import cmath
from math import gcd

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from quasijac.seriescore import Cyc, CyclotomicError, cyclotomic_polynomial, imaginary_unit, root_of_unity
from quasijac.seriescore.cyclotomic import field_degree, scalar_inverse, scalar_str

from conftest import scalar_value


def _numeric_cyclotomic(n: int) -> list[int]:
    """Coefficients of prod over primitive roots (x - w), rounded."""
    poly = [complex(1)]
    for k in range(1, n + 1):
        if gcd(k, n) != 1:
            continue
        w = cmath.exp(2j * cmath.pi * k / n)
        new = [complex(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            new[i + 1] += c
            new[i] -= w * c
        poly = new
    return [round(c.real) for c in poly]


@pytest.mark.parametrize("n", range(1, 31))
def test_cyclotomic_polynomial_matches_numeric_roots(n):
    assert list(cyclotomic_polynomial(n)) == _numeric_cyclotomic(n)


def test_small_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("n", [6, 12, 15, 24])
def test_product_over_divisors_is_x_power_minus_one(n):
    prod = [1]
    for d in range(1, n + 1):
        if n % d:
            continue
        f = cyclotomic_polynomial(d)
        out = [0] * (len(prod) + len(f) - 1)
        for i, a in enumerate(prod):
            for j, b in enumerate(f):
                out[i + j] += a * b
        prod = out
    assert prod == [-1] + [0] * (n - 1) + [1]


def test_invalid_order():
    with pytest.raises(CyclotomicError):
        cyclotomic_polynomial(0)


ORDERS = [3, 4, 5, 8, 12]


@st.composite
def cyc_elements(draw, order=None):
    order = order or draw(st.sampled_from(ORDERS))
    coords = draw(st.lists(st.fractions(max_denominator=7, min_value=-5, max_value=5),
                           min_size=field_degree(order), max_size=field_degree(order)))
    return Cyc.make([mpq(c.numerator, c.denominator) for c in coords], order)


def _close(a, b):
    return abs(complex(a) - complex(b)) < 1e-9


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ORDERS).flatmap(lambda n: st.tuples(cyc_elements(n), cyc_elements(n))))
def test_arithmetic_is_a_homomorphism_to_complex_numbers(pair):
    a, b = pair
    assert _close(scalar_value(a + b), scalar_value(a) + scalar_value(b))
    assert _close(scalar_value(a * b), scalar_value(a) * scalar_value(b))
    assert _close(scalar_value(a - b), scalar_value(a) - scalar_value(b))
    if b != 0:
        assert _close(scalar_value(a / b), complex(scalar_value(a)) / complex(scalar_value(b)))
        assert scalar_inverse(b) * b == 1


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ORDERS), st.integers(-30, 30))
def test_root_of_unity_has_the_right_order(order, k):
    w = root_of_unity(mpq(k, order), order)
    assert w ** order == 1
    assert _close(scalar_value(w), cmath.exp(2j * cmath.pi * k / order))


def test_rational_results_collapse_to_mpq():
    i = imaginary_unit()
    assert isinstance(i, Cyc)
    assert i * i == -1
    assert type(i * i) is type(mpq(0))
    assert Cyc.make([mpq(3, 2), 0], 4) == mpq(3, 2)


def test_mixing_orders_is_refused():
    with pytest.raises(CyclotomicError):
        root_of_unity(mpq(1, 4), 4) + root_of_unity(mpq(1, 3), 3)


def test_missing_roots_are_refused():
    with pytest.raises(CyclotomicError):
        imaginary_unit(3)
    with pytest.raises(CyclotomicError):
        root_of_unity(mpq(1, 3), 4)


def test_scalar_str_names_the_field():
    assert scalar_str(imaginary_unit()) == "(w)[w^4=1]"
    assert scalar_str(mpq(-2, 3)) == "-2/3"
