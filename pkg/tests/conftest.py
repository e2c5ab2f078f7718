from __future__ import annotations

import cmath
from fractions import Fraction

from gmpy2 import mpq

from quasijac.seriescore import CoefFn, Cyc, FourierSeries

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# ---------------------------------------------------------------------------
# evaluation helpers


def scalar_value(c):
    """Exact Fraction for rationals, complex for cyclotomic scalars."""
    if isinstance(c, Cyc):
        w = cmath.exp(2j * cmath.pi / c.order)
        return sum(float(x) * w**k for k, x in enumerate(c.coords))
    return Fraction(int(mpq(c).numerator), int(mpq(c).denominator))


def _power(x, e):
    e = Fraction(int(mpq(e).numerator), int(mpq(e).denominator))
    if e.denominator == 1:
        return x ** int(e)
    return complex(x) ** float(e)


def coef_value(c: CoefFn, zeta, qw=Fraction(1, 5)):
    """Value of a coefficient function at numeric zeta and qw."""

    def mono_value(m):
        return _power(zeta, m[0]) * _power(qw, m[1])

    num = sum((scalar_value(v) * mono_value(m) for m, v in c.num.items()), Fraction(0))
    den = Fraction(1)
    for u, e in c.den:
        den *= (1 - mono_value(u)) ** e
    return num / den


def laurent_table(s: FourierSeries) -> dict:
    """{(q exponent, zeta exponent): scalar} for a series with polynomial coefficients."""
    out = {}
    for e, c in s.terms.items():
        c = c.reduce()
        assert c.is_polynomial(), f"q^{e} coefficient is not a Laurent polynomial"
        for m, v in c.num.items():
            out[(Fraction(int(e.numerator), int(e.denominator)), Fraction(int(m[0].numerator), int(m[0].denominator)))] = v
    return out


def table_series(table: dict, order) -> FourierSeries:
    """Inverse of laurent_table for oracle dictionaries."""
    from quasijac.seriescore import mono

    terms: dict = {}
    for (e, r), v in table.items():
        if v and e < order:
            terms.setdefault(mpq(e), {})[mono(zeta=mpq(r))] = mpq(v)
    return FourierSeries({e: CoefFn(t) for e, t in terms.items()}, order)


# ---------------------------------------------------------------------------
# brute-force oracles, written from the defining sums


def bernoulli_oracle(n: int) -> list[Fraction]:
    """B_0..B_n from sum_{j<=m} C(m+1, j) B_j = 0."""
    from math import comb

    b = [Fraction(1)]
    for m in range(1, n + 1):
        b.append(-sum(comb(m + 1, j) * b[j] for j in range(m)) / (m + 1))
    return b


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def eisenstein_oracle(k: int, order: int) -> dict:
    """q-coefficients of G_k from -B_k/k! + 2/(k-1)! sum n^(k-1) q^n/(1-q^n)."""
    from math import factorial

    out = {0: -bernoulli_oracle(k)[k] / factorial(k)}
    for n in range(1, order):
        for j in range(1, order):
            if n * j >= order:
                break
            out[n * j] = out.get(n * j, 0) + Fraction(2 * n ** (k - 1), factorial(k - 1))
    return out


def eta_product_oracle(order: int) -> dict:
    """Coefficients of prod_{n>=1}(1 - q^n) below q^order."""
    poly = [Fraction(0)] * order
    poly[0] = Fraction(1)
    for n in range(1, order):
        new = list(poly)
        for i in range(order - n):
            new[i + n] -= poly[i]
        poly = new
    return {i: c for i, c in enumerate(poly) if c}


def theta_product_oracle(order: int) -> dict:
    """q^(1/8) zeta^(1/2) prod (1-q^n)(1-zeta q^n)(1-zeta^-1 q^(n-1)) as {(qexp, zexp): c}."""
    poly = {(0, 0): Fraction(1)}

    def times(p, qe, ze):
        out = dict(p)
        for (a, b), c in p.items():
            if a + qe < order:
                key = (a + qe, b + ze)
                out[key] = out.get(key, 0) - c
        return {k: v for k, v in out.items() if v}

    for n in range(1, order + 1):
        poly = times(poly, n, 0)
        poly = times(poly, n, 1)
        poly = times(poly, n - 1, -1)
    shift_q, shift_z = Fraction(1, 8), Fraction(1, 2)
    return {(a + shift_q, b + shift_z): c for (a, b), c in poly.items() if a + shift_q < order}


def gtilde_oracle(k: int, order: int) -> dict:
    """Positive-q part of G-tilde_k from the double sum over m, n >= 1."""
    from math import factorial

    out: dict = {}
    for m in range(1, order):
        for n in range(1, order):
            if m * n >= order:
                break
            w = Fraction(n ** (k - 1), factorial(k - 1))
            for r, c in ((m, w), (-m, (-1) ** k * w)):
                key = (Fraction(m * n), Fraction(r))
                out[key] = out.get(key, 0) + c
    return {key: v for key, v in out.items() if v}


def weier_p_oracle(m: int, order: int) -> dict:
    """Positive-q part of P_m: (-1)^m/(m-1)! sum_{d | K} (d^(m-1) zeta^d - (-d)^(m-1) zeta^-d)."""
    from math import factorial

    scale = Fraction((-1) ** m, factorial(m - 1))
    out: dict = {}
    for K in range(1, order):
        for d in divisors(K):
            for r, c in ((d, d ** (m - 1)), (-d, -((-d) ** (m - 1)))):
                key = (Fraction(K), Fraction(r))
                out[key] = out.get(key, 0) + scale * c
    return {key: v for key, v in out.items() if v}
