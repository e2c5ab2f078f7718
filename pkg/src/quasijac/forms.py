"""Catalog of the special functions used throughout the package.

Every constructor returns an exact truncated :class:`FourierSeries` (or a
:class:`WJet` in the formal variable W = 2 pi i w).  Variable conventions:
``zeta`` carries the elliptic variable (q_z, or q_w for the one-variable
functions P_m), ``qw`` carries the second elliptic variable of P-tilde.

Shifted arguments z -> alpha z + s tau are never produced by substituting into
a truncated series: for meromorphic forms infinitely many terms of the
unshifted expansion land on the same power of q.  Instead the defining sums are
re-evaluated at the shifted argument, with each geometric family resummed
exactly.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial

from gmpy2 import mpq

from .seriescore import (
    ONE,
    CoefFn,
    FourierSeries,
    WJet,
    bernoulli_numbers,
    geometric_family,
    imaginary_unit,
    mono,
)
from .seriescore.coef import mono_is_one, mono_pow


class FormError(ValueError):
    pass


def _q(x):
    return mpq(x)


def _floor(x) -> int:
    return int(mpq(x).__floor__())


def _ceil(x) -> int:
    return int(mpq(x).__ceil__())


@lru_cache(maxsize=None)
def _bernoulli(k: int):
    return bernoulli_numbers(max(k, 2))[k]


# ---------------------------------------------------------------------------
# modular pieces


def eisenstein(k: int, order) -> FourierSeries:
    """G_k(tau); G_0 = -1 and G_k = 0 for odd k."""
    order = _q(order)
    if k < 0:
        raise FormError("Eisenstein weight must be nonnegative")
    if k == 0:
        return FourierSeries.const(-1, order)
    if k % 2:
        return FourierSeries.zero(order)
    terms = {mpq(0): -_bernoulli(k) / factorial(k)}
    scale = mpq(2, factorial(k - 1))
    n = 1
    while n < order:
        sigma = sum(d ** (k - 1) for d in range(1, n + 1) if n % d == 0)
        terms[mpq(n)] = scale * sigma
        n += 1
    return FourierSeries(terms, order)


def eisenstein_twisted_display(k: int, lam: int, order) -> FourierSeries:
    """sum_j lambda^j/j! G_{k-j} literally, with G_0 = -1 and G_1 = 0."""
    if k < 1:
        raise FormError("twisted Eisenstein series need k >= 1")
    acc = FourierSeries.zero(_q(order))
    for j in range(k + 1):
        if lam or j == 0:
            acc = acc + eisenstein(k - j, order).scale(mpq(lam) ** j / factorial(j))
    return acc


def eisenstein_twisted(k: int, lam: int, order) -> FourierSeries:
    """G_{k,lambda}: minus the W^(k-1) coefficient of P_{1,lambda}.

    Closed form (-1)^k sum_j lambda^j/j! G_{k-j} with G_0 = -1 and G_1 taken
    as -B_1 = 1/2; this is what q_w^(-lambda) (P_1 + 1/2) expands to.
    """
    if k < 1:
        raise FormError("twisted Eisenstein series need k >= 1")
    order = _q(order)
    acc = FourierSeries.zero(order)
    for j in range(k + 1):
        if lam or j == 0:
            base = FourierSeries.const(mpq(1, 2), order) if k - j == 1 else eisenstein(k - j, order)
            acc = acc + base.scale(mpq(lam) ** j / factorial(j))
    return acc.scale((-1) ** k)


def normalized_eisenstein(k: int, order) -> FourierSeries:
    """e_k = G_k rescaled to constant term 1 (k even, k >= 4)."""
    g = eisenstein(k, order)
    c0 = g.extract(0)
    return g.scale(1 / c0)


def eta(order) -> FourierSeries:
    """q^(1/24) prod (1 - q^n), via the pentagonal number theorem."""
    order = _q(order)
    terms = {}
    k = 0
    while True:
        hit = False
        for j in ((k, -k) if k else (0,)):
            e = mpq(1, 24) + mpq(j * (3 * j - 1), 2)
            if e < order:
                terms[e] = mpq((-1) ** (j % 2))
                hit = True
        if not hit and k > 0:
            break
        k += 1
    return FourierSeries(terms, order)


def eta_power(power: int, order) -> FourierSeries:
    """eta^power for integer power, truncated at ``order``."""
    order = _q(order)
    if power >= 0:
        base = eta(order + 1)
        return (base ** power).truncate(order)
    # eta^(-n) has valuation -n/24; ask for enough precision from eta^n
    n = -power
    target = eta(order + mpq(n, 12) + 1) ** n
    return target.inverse().truncate(order)


def theta1(order) -> FourierSeries:
    """i sum (-1)^n q^((n+1/2)^2/2) zeta^(n+1/2)."""
    order = _q(order)
    i = imaginary_unit()
    terms: dict = {}
    n = 0
    while True:
        found = False
        for j in (n, -n - 1):
            r = mpq(2 * j + 1, 2)
            e = r * r / 2
            if e < order:
                found = True
                c = CoefFn.monomial(mono(zeta=r), i * (-1) ** (j % 2))
                terms[e] = terms[e] + c if e in terms else c
        if not found:
            break
        n += 1
    return FourierSeries(terms, order)


def prime_form_series(order) -> FourierSeries:
    """K(z) = theta_1 / (i eta^3) as a series in (q; zeta)."""
    order = _q(order)
    i = imaginary_unit()
    num = theta1(order + mpq(1, 8))
    den = eta(order + mpq(1, 8) + 1) ** 3
    return (num / den).scale(1 / i).truncate(order)


def prime_form(order, jet_order: int) -> WJet:
    """K as a W-jet: W * exp(-sum_{k>=2} G_k W^k / k)."""
    inner = {}
    for k in range(2, jet_order):
        inner[k] = eisenstein(k, order).scale(mpq(-1, k))
    expo = WJet(inner, jet_order - 1).exp()
    return expo.shift(1)


def p0_jet(order, jet_order: int) -> WJet:
    """P_0 without its logarithm: sum_{k>=1} G_k W^k / k."""
    return WJet({k: eisenstein(k, order).scale(mpq(1, k)) for k in range(1, jet_order)}, jet_order)


# ---------------------------------------------------------------------------
# Lambert-type sums  sum_n c(n) X^n / (1 - Y q^n)


def lambert(poly, x_mono, x_q, y_mono, y_q, order, skip_pole: bool = False) -> FourierSeries:
    """sum_{n in Z} poly(n) (x_mono q^x_q)^n / (1 - y_mono q^(y_q + n)).

    The index n = -y_q (when integral) is kept as a rational q^0-type term; with
    ``skip_pole`` it is dropped, which is required when ``y_mono`` is trivial.
    """
    order = _q(order)
    x_q, y_q = _q(x_q), _q(y_q)
    acc = FourierSeries.zero(order)

    def add_family(sign, ymono_pow, yq_shift, e, start, direction):
        nonlocal acc
        sub_order = order - yq_shift
        fam = geometric_family(poly, x_mono, e, start, sub_order, direction)
        acc = acc + fam.shift(yq_shift, ymono_pow, sign)

    # region n + y_q > 0: 1/(1 - Y q^n) = sum_{j>=0} Y^j q^{(n+y_q) j}
    n0 = _floor(-y_q) + 1
    j = 0
    while True:
        e = x_q + j
        if e > 0 and e * n0 + y_q * j >= order:
            break
        add_family(1, mono_pow(y_mono, j), y_q * j, e, n0, 1)
        j += 1
        if j > 10_000:
            raise FormError("Lambert sum failed to terminate")
    # region n + y_q < 0: 1/(1 - Y q^m) = -sum_{j>=1} Y^-j q^{-m j}
    n1 = _ceil(-y_q) - 1
    j = 1
    while True:
        e = x_q - j
        if e < 0 and e * n1 - y_q * j >= order:
            break
        add_family(-1, mono_pow(y_mono, -j), -y_q * j, e, n1, -1)
        j += 1
        if j > 10_000:
            raise FormError("Lambert sum failed to terminate")
    # n = -y_q exactly
    if (-y_q).denominator == 1:
        n = int(-y_q)
        val = sum(c * mpq(n) ** p for p, c in enumerate(poly))
        if val and not skip_pole:
            if mono_is_one(y_mono):
                raise FormError("Lambert term with a vanishing denominator")
            coef = CoefFn({mono_pow(x_mono, n): val}, ((y_mono, 1),))
            acc = acc + FourierSeries({x_q * n: coef}, order)
    return acc


def _power_poly(m: int, scale) -> list:
    """Coefficient list of scale * n^m."""
    return [mpq(0)] * m + [mpq(scale)]


# ---------------------------------------------------------------------------
# elliptic functions


def weier_p(m: int, order, lam: int | None = None) -> FourierSeries:
    """P_m(w) with zeta = q_w; with ``lam`` the twisted P_{m,lambda}."""
    if m < 1:
        raise FormError("P_m needs m >= 1")
    order = _q(order)
    poly = _power_poly(m - 1, mpq((-1) ** m, factorial(m - 1)))
    shift = 0 if lam is None else lam
    s = lambert(poly, mono(zeta=1), 0, ONE, shift, order, skip_pole=True)
    if lam is None and m == 1:
        s = s - FourierSeries.const(mpq(1, 2), order)
    return s


def wp_hat(order) -> FourierSeries:
    """P_2 - G_2 = wp/(2 pi i)^2."""
    return weier_p(2, order) - eisenstein(2, order)


def gtilde(k: int, order, alpha: int = 1, shift=0) -> FourierSeries:
    """G-tilde_k(alpha z + shift*tau) as a series in (q; zeta)."""
    order = _q(order)
    shift = _q(shift)
    if k < 0:
        raise FormError("G-tilde_k needs k >= 0")
    if k == 0:
        return FourierSeries.const(-1, order)
    if alpha == 0:
        raise FormError("alpha must be nonzero")
    z_up = mono(zeta=alpha)
    z_down = mono(zeta=-alpha)
    acc = FourierSeries.const(-_bernoulli(k) / factorial(k), order)
    if k == 1:
        acc = acc + geometric_family([mpq(1)], z_up, shift, 1, order, 1)
    scale = mpq(1, factorial(k - 1))
    sign = (-1) ** k
    n = 1
    while n - abs(shift) < order:
        weight = scale * mpq(n) ** (k - 1)
        acc = acc + geometric_family([weight], z_up, n + shift, 1, order, 1)
        acc = acc + geometric_family([weight * sign], z_down, n - shift, 1, order, 1)
        n += 1
    return acc


def ptilde(m: int, order, qw_shift=0, qz_shift=0) -> FourierSeries:
    """P-tilde_m(w + a tau, z + b tau) in (q; zeta = q_z, qw = q_w)."""
    if m < 1:
        raise FormError("P-tilde_m needs m >= 1")
    poly = _power_poly(m - 1, mpq((-1) ** m, factorial(m - 1)))
    return lambert(poly, mono(qw=1), qw_shift, mono(zeta=1), qz_shift, order)


def ptilde_at_offset(m: int, offset, order, qz_shift=0) -> FourierSeries:
    """P-tilde_m with q_w specialized to q^offset (0 < offset < 1)."""
    offset = _q(offset)
    if not 0 < offset < 1:
        raise FormError("offset must lie strictly between 0 and 1")
    poly = _power_poly(m - 1, mpq((-1) ** m, factorial(m - 1)))
    return lambert(poly, ONE, offset, mono(zeta=1), qz_shift, order)


def ptilde_jet(m: int, order, jet_order: int) -> WJet:
    """P-tilde_m as a W-jet with z-series coefficients."""
    if m < 1:
        raise FormError("P-tilde_m needs m >= 1")
    base_order = jet_order + m
    coeffs = {-1: FourierSeries.const(1)}
    for k in range(1, base_order + 1):
        coeffs[k - 1] = -gtilde(k, order)
    jet = WJet(coeffs, base_order)
    for j in range(m - 1):
        jet = _dw(jet)
    jet = jet.scale(mpq((-1) ** (m - 1), factorial(m - 1)))
    return WJet(dict(jet.coeffs), min(jet.order, jet_order))


def _dw(jet: WJet) -> WJet:
    return WJet({k - 1: c.scale(k) for k, c in jet.coeffs.items() if k}, jet.order - 1)


def kn_form(n: int, order) -> FourierSeries:
    """K_n = sum_m G-tilde_{n-m} G-tilde_1^m / m!."""
    g1 = gtilde(1, order)
    acc = FourierSeries.zero(_q(order))
    power = FourierSeries.const(1)
    for m in range(n + 1):
        if m:
            power = power * g1
        acc = acc + (gtilde(n - m, order) * power).scale(mpq(1, factorial(m)))
    return acc.reduce()


def f_r(R: int, order) -> FourierSeries:
    """F_R = ((-1)^(R+1)/R) (P_R - G_R)."""
    if R < 1:
        raise FormError("F_R needs R >= 1")
    return (weier_p(R, order) - eisenstein(R, order)).scale(mpq((-1) ** (R + 1), R))


def theta_over_eta(order, power: int = 1) -> FourierSeries:
    """(theta_1 / eta)^power."""
    order = _q(order)
    base = (theta1(order + 1) / eta(order + 2)).truncate(order + 1)
    return (base ** power).truncate(order)


# ---------------------------------------------------------------------------
# Jacobi-Eisenstein family


def jacobi_eisenstein(which: str, order):
    """E41, E61 or phi101 as JacobiForm tables up to q-order ``order``."""
    from .jacobi import JacobiForm
    from .lattice import e8_lattice, theta_table
    from .operators import OpSpec, apply_M

    order = int(order)
    if which not in ("E41", "E61", "phi101"):
        raise FormError(f"unknown Jacobi-Eisenstein series {which!r}")
    e41 = JacobiForm.from_counts(4, 1, theta_table(e8_lattice(), order))
    if which == "E41":
        return e41
    heat = apply_M(e41.to_series(), OpSpec(A=0, B=1, k=4, alpha=1, m=1))
    e61_series = heat.scale(mpq(-24, 7))
    e61 = JacobiForm.from_series(6, 1, e61_series)
    if which == "E61":
        return e61
    combo = normalized_eisenstein(6, order) * e41.to_series() - normalized_eisenstein(4, order) * e61_series
    return JacobiForm.from_series(10, 1, combo.scale(mpq(1, 144)))


CATALOG = (
    "eisenstein",
    "eisenstein_twisted",
    "weier_p",
    "gtilde",
    "ptilde",
    "prime_form",
    "p0",
    "theta1",
    "eta",
    "wp_hat",
    "E41",
    "E61",
    "phi101",
    "f_r",
    "kn",
)

__all__ = [
    "CATALOG",
    "FormError",
    "eisenstein",
    "eisenstein_twisted",
    "eisenstein_twisted_display",
    "eta",
    "eta_power",
    "f_r",
    "gtilde",
    "jacobi_eisenstein",
    "kn_form",
    "lambert",
    "normalized_eisenstein",
    "p0_jet",
    "prime_form",
    "prime_form_series",
    "ptilde",
    "ptilde_at_offset",
    "ptilde_jet",
    "theta1",
    "theta_over_eta",
    "weier_p",
    "wp_hat",
]
