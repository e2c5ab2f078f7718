from __future__ import annotations

from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from quasijac.seriescore import ONE, QW, ZETA, CoefError, CoefFn, mono, var_index

from conftest import coef_value

Z0 = Fraction(1, 3)


@st.composite
def coef_fns(draw):
    """num / prod(1 - zeta^a)^e with small integer data."""
    n_terms = draw(st.integers(0, 3))
    num = {}
    for _ in range(n_terms):
        m = mono(zeta=draw(st.integers(-3, 3)))
        num[m] = mpq(draw(st.integers(-4, 4)))
    den = []
    for _ in range(draw(st.integers(0, 2))):
        a = draw(st.integers(1, 3))
        den.append((mono(zeta=a * draw(st.sampled_from([1, -1]))), draw(st.integers(1, 2))))
    return CoefFn(num, tuple(den))


@settings(max_examples=80, deadline=None)
@given(coef_fns(), coef_fns())
def test_ring_operations_agree_with_evaluation(a, b):
    va, vb = coef_value(a, Z0), coef_value(b, Z0)
    assert coef_value(a + b, Z0) == va + vb
    assert coef_value(a - b, Z0) == va - vb
    assert coef_value(a * b, Z0) == va * vb
    unit = CoefFn({mono(zeta=1): mpq(2)})
    assert coef_value(a / unit, Z0) == va / (2 * Z0)
    assert coef_value(a / 3, Z0) == va / 3


@settings(max_examples=80, deadline=None)
@given(coef_fns())
def test_reduce_preserves_the_value(a):
    assert coef_value(a.reduce(), Z0) == coef_value(a, Z0)


@settings(max_examples=60, deadline=None)
@given(coef_fns(), coef_fns())
def test_derivative_is_a_derivation(a, b):
    lhs = (a * b).derive(ZETA)
    rhs = a.derive(ZETA) * b + a * b.derive(ZETA)
    assert (lhs - rhs).is_zero()


def test_derivative_of_geometric_sum():
    # D(x/(1-x)) = x/(1-x)^2 with D = x d/dx
    u = mono(zeta=1)
    d = CoefFn.geometric(u).derive(ZETA)
    expected = CoefFn({u: mpq(1)}, ((u, 2),))
    assert (d - expected).is_zero()


def test_geometric_value():
    g = CoefFn.geometric(mono(zeta=2), start=1)
    assert coef_value(g, Z0) == Fraction(1, 9) / (1 - Fraction(1, 9))


def test_reduce_cancels_cyclotomic_factors():
    u = mono(zeta=1)
    c = CoefFn({ONE: mpq(1), mono(zeta=2): mpq(-1)}, ((u, 1),)).reduce()
    assert c.is_polynomial()
    assert c == CoefFn({ONE: mpq(1), u: mpq(1)})
    d = CoefFn({ONE: mpq(1), u: mpq(1)}, ((mono(zeta=2), 1),)).reduce()
    assert d.den == ((u, 1),)


def test_denominators_are_normalized_to_a_positive_direction():
    c = CoefFn({ONE: mpq(1)}, ((mono(zeta=-1), 1),))
    assert all(u[ZETA] > 0 for u, _ in c.den)
    assert coef_value(c, Z0) == 1 / (1 - 1 / Z0)


def test_substitute_inverts_the_variable():
    c = CoefFn.geometric(mono(zeta=1))
    flipped = c.substitute(ZETA, mono(zeta=-1))
    assert coef_value(flipped, Z0) == (1 / Z0) / (1 - 1 / Z0)


def test_substitute_with_a_phase():
    c = CoefFn({mono(zeta=1): mpq(1)})
    flipped = c.substitute(ZETA, mono(zeta=1), turn=mpq(1, 2))
    assert flipped == CoefFn({mono(zeta=1): mpq(-1)})


def test_evaluate_at_one():
    c = CoefFn({ONE: mpq(1), mono(zeta=2): mpq(-1)}, ((mono(zeta=1), 1),))
    assert c.evaluate_at_one(ZETA).constant_value() == 2
    with pytest.raises(ZeroDivisionError):
        CoefFn.geometric(mono(zeta=1)).evaluate_at_one(ZETA)


def test_invert_and_two_variables():
    c = CoefFn({ONE: mpq(3), mono(zeta=1, qw=1): mpq(3)})
    inv = c.invert()
    assert (inv * c - CoefFn.const(1)).is_zero()
    with pytest.raises(CoefError):
        CoefFn({ONE: mpq(1), mono(zeta=1): mpq(-2)}).invert()
    assert c.depends_on(QW) and not CoefFn.const(3).depends_on(QW)


def test_variable_alphabet_is_fixed():
    assert var_index("zeta") == ZETA
    with pytest.raises(CoefError):
        var_index("x")
