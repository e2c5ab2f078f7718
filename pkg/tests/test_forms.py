from __future__ import annotations

from fractions import Fraction

import pytest
from gmpy2 import mpq

from quasijac import forms
from quasijac.seriescore import ZETA, FourierSeries, jet_from_series, mono
from quasijac.seriescore.cyclotomic import imaginary_unit

from conftest import (
    coef_value,
    eisenstein_oracle,
    eta_product_oracle,
    gtilde_oracle,
    laurent_table,
    table_series,
    theta_product_oracle,
    weier_p_oracle,
)

Q = 8
Z0 = Fraction(1, 3)


def _positive_part(s: FourierSeries) -> FourierSeries:
    return FourierSeries({e: c for e, c in s.terms.items() if e > 0}, s.order)


@pytest.mark.parametrize("k", [2, 4, 6, 8, 10])
def test_eisenstein_matches_divisor_sum(k):
    g = forms.eisenstein(k, Q)
    oracle = eisenstein_oracle(k, Q)
    for n in range(Q):
        assert g.extract(n) == oracle.get(n, 0)


def test_eisenstein_special_cases():
    assert forms.eisenstein(3, Q).is_zero()
    assert forms.eisenstein(0, Q).extract(0) == -1
    assert forms.eisenstein(2, Q).extract(0) == mpq(-1, 12)
    with pytest.raises(forms.FormError):
        forms.eisenstein(-2, Q)


def test_ramanujan_e4_squared_is_e8():
    e4 = forms.normalized_eisenstein(4, Q)
    assert (e4 * e4).equals(forms.normalized_eisenstein(8, Q))
    assert e4.extract(1) == 240


def test_eta_matches_product():
    oracle = eta_product_oracle(Q)
    s = forms.eta(Q + mpq(1, 24)).shift(mpq(-1, 24))
    for n in range(Q):
        assert s.extract(n) == oracle.get(n, 0)


def test_eta_power_inverse():
    assert (forms.eta_power(-3, 4) * forms.eta_power(3, 5)).equals(FourierSeries.const(1, 4))


def test_theta1_matches_triple_product():
    th = forms.theta1(Q).scale(1 / imaginary_unit())
    assert laurent_table(th) == theta_product_oracle(Q)


def test_theta1_leading_term():
    th = forms.theta1(2)
    i = imaginary_unit()
    assert th.exponents() == [mpq(1, 8), mpq(9, 8)]
    assert th.extract(mpq(1, 8), mono(zeta=mpq(1, 2))) == i
    assert th.extract(mpq(1, 8), mono(zeta=mpq(-1, 2))) == -i


def test_prime_form_has_unit_slope_at_zero():
    jet = jet_from_series(forms.prime_form_series(4), ZETA, 3)
    assert jet.coefficient(0).is_zero()
    assert jet.coefficient(1).equals(FourierSeries.const(1, 4))


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_weierstrass_matches_divisor_sum(m):
    p = forms.weier_p(m, Q)
    assert laurent_table(_positive_part(p)) == weier_p_oracle(m, Q)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_weierstrass_constant_term(m):
    from math import factorial

    # (-1)^m/(m-1)! sum_{n >= 1} n^(m-1) zeta^n, and -1/2 more for m = 1
    tail = sum(Fraction(n ** (m - 1)) * Z0**n for n in range(1, 400))
    expected = Fraction((-1) ** m, factorial(m - 1)) * tail - (Fraction(1, 2) if m == 1 else 0)
    value = coef_value(forms.weier_p(m, Q).coefficient(0), Z0)
    assert abs(value - expected) < Fraction(1, 10**50)


@pytest.mark.parametrize("k", range(1, 8))
def test_gtilde_matches_double_sum(k):
    g = forms.gtilde(k, Q)
    assert laurent_table(_positive_part(g)) == gtilde_oracle(k, Q)


def test_gtilde_constant_terms():
    from quasijac.seriescore import bernoulli_numbers

    b = bernoulli_numbers(8)
    # G-tilde_1 at q^0 is 1/2 + zeta/(1 - zeta)
    assert coef_value(forms.gtilde(1, 4).coefficient(0), Z0) == Fraction(1, 2) + Z0 / (1 - Z0)
    for k in range(2, 8):
        from math import factorial

        assert forms.gtilde(k, 4).extract(0) == -b[k] / factorial(k)
    assert forms.gtilde(0, 4).extract(0) == -1


def test_gtilde2_display():
    g = forms.gtilde(2, 2)
    assert g.extract(1, mono(zeta=1)) == 1 and g.extract(1, mono(zeta=-1)) == 1


def test_gtilde_rescaled_argument():
    g = forms.gtilde(2, Q, alpha=2)
    assert g.equals(forms.gtilde(2, Q).substitute(ZETA, mono(zeta=2)))


def test_quasi_basic_identities():
    g1, g2 = forms.gtilde(1, Q), forms.gtilde(2, Q)
    p1, p2 = forms.weier_p(1, Q), forms.weier_p(2, Q)
    assert (g1 + p1).is_zero()
    assert g2.scale(2).equals(p2 - p1 * p1 - forms.eisenstein(2, Q))


def test_derivative_law_carries_a_plus_sign():
    # D_tau G-tilde_k = +k D_z G-tilde_(k+1); the opposite sign fails at the first q-power
    for k in (1, 2, 3):
        lhs = forms.gtilde(k, Q).derive_q()
        rhs = forms.gtilde(k + 1, Q).derive(ZETA).scale(k)
        assert lhs.equals(rhs)
        assert not lhs.equals(rhs.scale(-1))


def test_twisted_eisenstein_printed_sum_disagrees_with_expansion():
    # constant term of P_(1,0) = P_1 + 1/2 is 1/2, so G_(1,0) = -1/2
    jet = jet_from_series(forms.weier_p(1, 4, lam=0), ZETA, 2)
    assert jet.coefficient(0).extract(0) == mpq(1, 2)
    assert forms.eisenstein_twisted(1, 0, 4).extract(0) == mpq(-1, 2)
    assert forms.eisenstein_twisted_display(1, 0, 4).is_zero()


@pytest.mark.parametrize("lam", [-2, -1, 1, 2])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_twisted_eisenstein_is_minus_the_jet_coefficient(k, lam):
    jet = jet_from_series(forms.weier_p(1, 4, lam=lam), ZETA, k + 1)
    assert forms.eisenstein_twisted(k, lam, 4).equals(-jet.coefficient(k - 1))


def test_twisted_weierstrass_is_shifted_p1():
    for lam in (-1, 1, 2):
        lhs = forms.weier_p(1, Q, lam=lam)
        rhs = (forms.weier_p(1, Q) + FourierSeries.const(mpq(1, 2), Q)).shift(0, mono(zeta=-lam))
        assert lhs.equals(rhs)


def test_kn_and_fr_small_cases():
    assert forms.kn_form(0, Q).equals(FourierSeries.const(-1, Q))
    assert forms.kn_form(1, Q).is_zero()
    assert forms.f_r(1, Q).equals(forms.weier_p(1, Q))


def test_ptilde1_constant_term_sign():
    c0 = forms.ptilde(1, 2).terms[mpq(0)]
    for zeta, qw in ((Fraction(1, 3), Fraction(1, 5)), (Fraction(-2, 7), Fraction(2, 9))):
        value = coef_value(c0, zeta, qw)
        assert value == -1 / (1 - zeta) - qw / (1 - qw)
        assert value != -1 / (1 - zeta) + qw / (1 - qw)


def test_ptilde_jet_leading_pole():
    jet = forms.ptilde_jet(1, 4, 3)
    assert jet.pole_order() == 1
    assert jet.coefficient(0).equals(-forms.gtilde(1, 4))


def test_e8_jacobi_eisenstein_table():
    e41 = forms.jacobi_eisenstein("E41", 2)
    assert e41.coefficient(0, 0) == 1
    assert [e41.coefficient(1, r) for r in (0, 1, 2)] == [126, 56, 1]


def test_catalog_rejects_bad_parameters():
    with pytest.raises(forms.FormError):
        forms.weier_p(0, Q)
    with pytest.raises(forms.FormError):
        forms.ptilde_at_offset(1, 1, Q)
    with pytest.raises(forms.FormError):
        forms.jacobi_eisenstein("E81", 2)
    with pytest.raises(forms.FormError):
        forms.gtilde(1, Q, alpha=0)


def test_oracle_helper_round_trip():
    t = gtilde_oracle(3, 4)
    assert laurent_table(table_series(t, 4)) == t
