from __future__ import annotations

import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from quasijac import checks, forms, jacobi, operators
from quasijac.operators import OperatorError, OpSpec
from quasijac.seriescore import FourierSeries, TruncationError, mono

Q = 6


@pytest.fixture(scope="module")
def e41():
    return forms.jacobi_eisenstein("E41", 8)


def test_heat_kills_theta1():
    th = forms.theta1(12)
    assert operators.apply_heat(th, mpq(1, 2), mpq(1, 2)).is_zero()


def test_top_on_theta1():
    th = forms.theta1(8)
    out = operators.apply_top(th, mpq(1, 2), mpq(1, 2))
    expected = -(forms.wp_hat(8) * th).truncate(8)
    assert out.equals(expected)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([mpq(1, 2), 1, 2]), st.sampled_from([0, 1, 4]))
def test_top_is_heat_plus_serre(seed, m, k):
    s = checks.random_series(random.Random(seed), Q)
    top = operators.apply_top(s, k, m)
    combo = operators.apply_heat(s, k, m).scale(4 * m) + operators.apply_serre(s, k, m).scale(1 - 4 * m)
    assert top.equals(combo)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.integers(-3, 3), st.integers(-3, 3))
def test_general_operator_is_a_combination(seed, a, b):
    m, k = mpq(1), 2
    if a == 4 * m * b:
        return
    s = checks.random_series(random.Random(seed), Q)
    lhs = operators.apply_M(s, OpSpec(a, b, k, 1, m))
    top = operators.apply_top(s, k, m)
    heat = operators.apply_heat(s, k, m)
    rhs = (top.scale(a) - heat.scale(4 * m * b)).scale(1 / (a - 4 * m * b))
    assert lhs.equals(rhs)


def test_operators_preserve_the_elliptic_law(e41):
    s = e41.to_series(6)
    for spec in (OpSpec.heat(4, 1), OpSpec.top(4, 1, 2), OpSpec.serre(4, 1)):
        assert jacobi.elliptic_check(operators.apply_M(s, spec), 1, 1)


def test_opspec_validation():
    with pytest.raises(OperatorError):
        OpSpec(1, 0, 0, 0, 1)
    with pytest.raises(OperatorError):
        OpSpec(4, 1, 0, 1, 1)


def test_vartheta_adds_g2():
    s = FourierSeries.const(1, Q)
    assert operators.apply_vartheta(s, 3).equals(forms.eisenstein(2, Q).scale(3))


def test_residue_functional_vanishes_for_e41(e41):
    for alpha in (1, 2):
        for lam in range(-2, 3):
            for mu in (0, 1):
                assert operators.residue_functional(e41, alpha, lam, mu, 4).is_zero()


def test_residue_obstruction_for_phi101():
    phi = forms.jacobi_eisenstein("phi101", 8)
    res = operators.residue_functional(phi, 3, 1, 0, 1)
    assert res.extract(mpq(2, 3)) == mpq(-1, 3)


def test_residue_cyclotomic_order():
    assert operators.residue_cyclotomic_order(1) == 4
    assert operators.residue_cyclotomic_order(2) == 4
    assert operators.residue_cyclotomic_order(3) == 12
    assert operators.residue_cyclotomic_order(3, mpq(1, 2)) == 12


def test_residue_needs_the_roots_and_the_table(e41):
    with pytest.raises(OperatorError):
        operators.residue_functional(e41, 3, 1, 1, 2, cyclotomic_order=4)
    with pytest.raises(TruncationError):
        operators.residue_functional(forms.jacobi_eisenstein("E41", 2), 1, 2, 0, 6)


def test_rescaled_gtilde():
    assert operators.gtilde_rescaled(1, 1, Q).equals(forms.gtilde(1, Q))
    assert operators.gtilde_rescaled(2, 3, Q).equals(forms.gtilde(2, Q, alpha=3))


def test_operators_need_truncated_input():
    with pytest.raises(OperatorError):
        operators.apply_heat(FourierSeries.monomial(0, mono(zeta=1)), 0, 1)
