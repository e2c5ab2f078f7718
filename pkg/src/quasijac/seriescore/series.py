"""Truncated Puiseux series in q with CoefFn coefficients."""

from __future__ import annotations

from math import isqrt, lcm

from gmpy2 import mpq

from .coef import (
    ONE,
    CoefFn,
    mono_inv,
    mono_is_one,
    mono_mul,
    mono_pow,
    _leading_index,
)
from .cyclotomic import DEFAULT_ORDER, root_of_unity, scalar_inverse


class SeriesError(ValueError):
    pass


class TruncationError(SeriesError):
    pass


class SubstitutionError(SeriesError):
    pass


def _q(x) -> mpq:
    return x if isinstance(x, type(mpq(0))) else mpq(x)


def _min_order(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a if a <= b else b


def _denominator_lcm(values) -> int:
    return lcm(1, *(int(_q(v).denominator) for v in values))


class FourierSeries:
    """sum_e c_e q^e, exact below ``order`` (``None`` means no truncation)."""

    __slots__ = ("terms", "order")

    def __init__(self, terms: dict | None = None, order=None):
        order = None if order is None else _q(order)
        clean = {}
        for e, c in (terms or {}).items():
            e = _q(e)
            if order is not None and e >= order:
                continue
            if not isinstance(c, CoefFn):
                c = CoefFn.const(c)
            if c.is_zero():
                continue
            clean[e] = c
        self.terms = clean
        self.order = order

    @classmethod
    def _raw(cls, terms: dict, order) -> "FourierSeries":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.order = order
        return obj

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, order=None) -> "FourierSeries":
        return cls({}, order)

    @classmethod
    def const(cls, c, order=None) -> "FourierSeries":
        return cls({mpq(0): c}, order)

    @classmethod
    def monomial(cls, qexp, m: tuple = ONE, c=1, order=None) -> "FourierSeries":
        return cls({_q(qexp): CoefFn.monomial(m, c)}, order)

    # inspection -----------------------------------------------------------
    def exponents(self) -> list:
        return sorted(self.terms)

    def valuation(self):
        """Lowest exponent present; the order for a truncated zero series."""
        if self.terms:
            return min(self.terms)
        return self.order

    def coefficient(self, qexp) -> CoefFn:
        qexp = _q(qexp)
        if self.order is not None and qexp >= self.order:
            raise TruncationError(f"q^{qexp} is at or beyond the truncation order {self.order}")
        return self.terms.get(qexp, CoefFn.const(0))

    def extract(self, qexp, m: tuple = ONE):
        """Scalar coefficient of q^qexp * m; the coefficient must be polynomial."""
        c = self.coefficient(qexp)
        if not c.is_polynomial():
            c = c.reduce()
        if not c.is_polynomial():
            raise SeriesError(f"coefficient of q^{qexp} is not a Laurent polynomial")
        return c.num.get(tuple(_q(x) for x in m), mpq(0))

    def qden(self) -> int:
        vals = list(self.terms)
        if self.order is not None:
            vals.append(self.order)
        return _denominator_lcm(vals)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.terms.values())

    def is_polynomial(self) -> bool:
        return all(c.is_polynomial() for c in self.terms.values())

    # arithmetic -----------------------------------------------------------
    def _wrap(self, other):
        if isinstance(other, FourierSeries):
            return other
        if isinstance(other, CoefFn):
            return FourierSeries._raw({mpq(0): other} if not other.is_zero() else {}, None)
        return FourierSeries.const(other)

    def __add__(self, other):
        other = self._wrap(other)
        order = _min_order(self.order, other.order)
        terms = {}
        for src in (self.terms, other.terms):
            for e, c in src.items():
                if order is not None and e >= order:
                    continue
                prev = terms.get(e)
                terms[e] = c if prev is None else prev + c
        return FourierSeries._raw({e: c for e, c in terms.items() if not c.is_zero()}, order)

    __radd__ = __add__

    def __neg__(self):
        return FourierSeries._raw({e: -c for e, c in self.terms.items()}, self.order)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "FourierSeries":
        if c == 0:
            return FourierSeries._raw({}, self.order)
        return FourierSeries._raw({e: x.scale(c) for e, x in self.terms.items()}, self.order)

    def __mul__(self, other):
        if not isinstance(other, (FourierSeries, CoefFn)):
            return self.scale(other)
        other = self._wrap(other)
        va, vb = self.valuation(), other.valuation()
        if not self.terms and self.order is None or not other.terms and other.order is None:
            return FourierSeries._raw({}, None)
        candidates = []
        if self.order is not None:
            candidates.append(self.order + vb)
        if other.order is not None:
            candidates.append(other.order + va)
        order = min(candidates) if candidates else None
        terms: dict = {}
        b_items = sorted(other.terms.items())
        for ea, ca in sorted(self.terms.items()):
            for eb, cb in b_items:
                e = ea + eb
                if order is not None and e >= order:
                    break
                prev = terms.get(e)
                prod = ca * cb
                terms[e] = prod if prev is None else prev + prod
        return FourierSeries._raw({e: c for e, c in terms.items() if not c.is_zero()}, order)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = FourierSeries.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, qexp=0, m: tuple = ONE, c=1) -> "FourierSeries":
        """Multiply by c * q^qexp * m."""
        qexp = _q(qexp)
        order = None if self.order is None else self.order + qexp
        terms = {}
        for e, x in self.terms.items():
            y = x.shift(m) if not mono_is_one(m) else x
            terms[e + qexp] = y.scale(c) if c != 1 else y
        return FourierSeries._raw(terms, order)

    def inverse(self) -> "FourierSeries":
        if not self.terms:
            raise ZeroDivisionError("inverse of the zero series")
        v = min(self.terms)
        lead_inv = self.terms[v].invert()
        if self.order is None:
            if len(self.terms) != 1:
                raise SeriesError("inverse of an exact series needs a truncation order")
            return FourierSeries._raw({-v: lead_inv}, None)
        rel = self.order - v
        if rel <= 0:
            raise TruncationError("truncation order is not above the lowest exponent")
        new_order = -v + rel
        rest = sorted((e - v, c) for e, c in self.terms.items() if e != v)
        step = _denominator_lcm([d for d, _ in rest] + [rel])
        out = {}
        grid = int(rel * step)
        values: dict = {0: lead_inv}
        for k in range(1, grid):
            acc = None
            for d, c in rest:
                j = k - int(d * step)
                if j < 0:
                    break
                prev = values.get(j)
                if prev is None:
                    continue
                t = c * prev
                acc = t if acc is None else acc + t
            if acc is not None and not acc.is_zero():
                val = -(acc * lead_inv).reduce()
                if not val.is_zero():
                    values[k] = val
        for k, c in values.items():
            out[-v + mpq(k, step)] = c
        return FourierSeries._raw(out, new_order)

    def __truediv__(self, other):
        if isinstance(other, FourierSeries):
            return self * other.inverse()
        if isinstance(other, CoefFn):
            return self * other.invert()
        return self.scale(scalar_inverse(other))

    def __rtruediv__(self, other):
        return self.inverse() * other

    # calculus -------------------------------------------------------------
    def derive_q(self) -> "FourierSeries":
        """D_tau = q d/dq."""
        return FourierSeries._raw(
            {e: c.scale(e) for e, c in self.terms.items() if e != 0}, self.order
        )

    def derive(self, v: int) -> "FourierSeries":
        terms = {}
        for e, c in self.terms.items():
            d = c.derive(v)
            if not d.is_zero():
                terms[e] = d
        return FourierSeries._raw(terms, self.order)

    # bookkeeping ----------------------------------------------------------
    def truncate(self, order) -> "FourierSeries":
        order = _min_order(self.order, None if order is None else _q(order))
        return FourierSeries._raw(
            {e: c for e, c in self.terms.items() if order is None or e < order}, order
        )

    def reduce(self) -> "FourierSeries":
        terms = {}
        for e, c in self.terms.items():
            r = c.reduce()
            if not r.is_zero():
                terms[e] = r
        return FourierSeries._raw(terms, self.order)

    def map_coefficients(self, fn) -> "FourierSeries":
        terms = {}
        for e, c in self.terms.items():
            r = fn(c)
            if not r.is_zero():
                terms[e] = r
        return FourierSeries._raw(terms, self.order)

    def first_difference(self, other: "FourierSeries"):
        """None if equal on the common window, else (qexp, self coef, other coef)."""
        order = _min_order(self.order, other.order)
        for e in sorted(set(self.terms) | set(other.terms)):
            if order is not None and e >= order:
                break
            a = self.terms.get(e, CoefFn.const(0))
            b = other.terms.get(e, CoefFn.const(0))
            if not (a - b).is_zero():
                return e, a.reduce(), b.reduce()
        return None

    def equals(self, other: "FourierSeries") -> bool:
        return self.first_difference(other) is None

    def __repr__(self):
        return f"FourierSeries({self})"

    def __str__(self):
        parts = []
        for e in self.exponents():
            parts.append(f"[{self.terms[e]}]q^{e}")
        tail = "" if self.order is None else f" + O(q^{self.order})"
        return (" + ".join(parts) or "0") + tail

    # substitution ---------------------------------------------------------
    def substitute(
        self,
        var: int,
        image: tuple | None = None,
        qshift=0,
        turn=0,
        support: tuple | None = None,
        cyclotomic_order: int = DEFAULT_ORDER,
    ) -> "FourierSeries":
        """Apply var -> exp(2 pi i turn) * image * q^qshift.

        ``image`` defaults to the variable itself.  A nonzero ``qshift`` needs a
        ``support`` certificate (m, d): every unknown term q^n var^r satisfies
        r^2 <= 4 m (n + d).  Without it the result would mix unknown terms into
        the reported window, so the call is refused.
        """
        qshift = _q(qshift)
        if image is None:
            base = [mpq(0)] * len(ONE)
            base[var] = mpq(1)
            image = tuple(base)
        turn = _q(turn)
        if qshift == 0:
            return FourierSeries._raw(
                {
                    e: r
                    for e, c in self.terms.items()
                    if not (r := c.substitute(var, image, turn, cyclotomic_order)).is_zero()
                },
                self.order,
            )
        order = self._shifted_order(var, qshift, support)
        acc = FourierSeries.zero(order)
        for e, c in sorted(self.terms.items()):
            acc = acc + _substitute_coefficient(
                c, e, var, image, qshift, turn, cyclotomic_order, order
            )
        return acc.truncate(order)

    def _shifted_order(self, var, qshift, support):
        if self.order is None:
            # exact input: exponents of known terms bound the result
            return None
        if support is None:
            raise SubstitutionError(
                "a q-shifting substitution on a truncated series needs a support bound"
            )
        m_s, d = (_q(x) for x in support)
        known_low = self.order
        # unknown region n >= Q: exponent n + a r >= n - 2|a| sqrt(m (n + d))
        a2 = qshift * qshift
        n_star = a2 * m_s - d  # stationary point of n - 2|a| sqrt(m(n+d))
        if self.order <= n_star:
            bound = -a2 * m_s - d
        else:
            t = 4 * a2 * m_s * (self.order + d)
            bound = self.order - _sqrt_upper(t)
        return min(bound, known_low)


def _sqrt_upper(t: mpq, digits: int = 10**6) -> mpq:
    """Rational upper bound for sqrt(t), exact when t is a rational square."""
    num, den = int(t.numerator), int(t.denominator)
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return mpq(rn, rd)
    scaled = (num * digits * digits) // den
    return mpq(isqrt(scaled) + 1, digits)


def _substitute_coefficient(c: CoefFn, e, var, image, qshift, turn, corder, order):
    """Series for q^e * c under var -> phase * image * q^qshift."""

    def phase(k):
        return root_of_unity(turn * k, corder) if turn else mpq(1)

    def move(m):
        rest = list(m)
        rest[var] = mpq(0)
        return mono_mul(tuple(rest), mono_pow(image, m[var]))

    num_terms: dict = {}
    for m, x in c.num.items():
        qe = e + qshift * m[var]
        key = move(m)
        bucket = num_terms.setdefault(qe, {})
        val = x * phase(m[var])
        bucket[key] = bucket.get(key, 0) + val
    result = FourierSeries(
        {qe: CoefFn(terms) for qe, terms in num_terms.items()}, None
    )
    low = min(num_terms) if num_terms else None
    for u, power in c.den:
        shift = qshift * u[var]
        moved = move(u)
        ph = phase(u[var])
        if shift == 0:
            from .coef import _inverse_binomial

            factor = FourierSeries._raw({mpq(0): _inverse_binomial(moved, ph, power)}, None)
        else:
            factor = _geometric_inverse(moved, ph, shift, power, order, low)
        result = result * factor
        if order is not None:
            result = result.truncate(order)
    return result


def _geometric_inverse(u, c, shift, power, order, low):
    """(1 - c u q^shift)^(-power) expanded in q, to the given order."""
    if order is None:
        raise SubstitutionError("geometric re-expansion needs a finite truncation order")
    if shift > 0:
        x_mono, x_c, x_q = u, c, shift
        pref = FourierSeries.const(1)
    else:
        # 1 - y = -y (1 - 1/y)
        x_mono, x_c, x_q = mono_inv(u), scalar_inverse(c), -shift
        pref = FourierSeries.monomial(x_q * power, mono_pow(x_mono, power), x_c ** power)
        pref = pref.scale((-1) ** power)
    low = low or mpq(0)
    budget = order - low - (pref.valuation() or 0)
    terms = {}
    j = 0
    binom = 1
    while j * x_q < budget:
        # coefficient C(j + power - 1, power - 1)
        terms[j * x_q] = CoefFn.monomial(mono_pow(x_mono, j), binom * (x_c ** j))
        j += 1
        binom = binom * (j + power - 1) // j
    series = FourierSeries(terms, budget)
    return pref * series


# ---------------------------------------------------------------------------
# geometric families: sum_{n >= start} poly(n) * (mono * q^e)^n


def _poly_eval(poly, n):
    acc = mpq(0)
    for c in reversed(poly):
        acc = acc * n + c
    return acc


def _rational_family(poly, m: tuple, start: int) -> CoefFn:
    """sum_{n >= start} poly(n) m^n as a rational function (|m| < 1 region)."""
    lead = _leading_index(m)
    base = CoefFn.geometric(m, start)
    total = CoefFn.const(0)
    cur = base
    for p, coef in enumerate(poly):
        if p:
            cur = cur.derive(lead).scale(scalar_inverse(m[lead]))
        if coef:
            total = total + cur.scale(coef)
    return total


def geometric_family(poly, m: tuple, e, start: int, order, direction: int = 1) -> FourierSeries:
    """sum over n >= start (direction +1) or n <= start (direction -1) of
    poly(n) * (m q^e)^n, resummed as rational functions when e = 0 and
    continued through sum_{n in Z} x^n = 0 when the q-powers run downward.

    ``poly`` lists the polynomial coefficients, constant first.
    """
    e = _q(e)
    if direction < 0:
        flipped = [c * (-1) ** p for p, c in enumerate(poly)]
        return geometric_family(flipped, mono_inv(m), -e, -start, order, 1)
    if e == 0:
        if mono_is_one(m):
            raise SeriesError("geometric family with a unit ratio diverges")
        return FourierSeries({mpq(0): _rational_family(poly, m, start)}, order)
    if e > 0:
        terms = {}
        n = start
        while order is None or e * n < order:
            if order is None:
                raise SeriesError("an infinite family needs a truncation order")
            val = _poly_eval(poly, n)
            if val:
                qe = e * n
                prev = terms.get(qe)
                t = CoefFn.monomial(mono_pow(m, n), val)
                terms[qe] = t if prev is None else prev + t
            n += 1
        return FourierSeries(terms, order)
    # e < 0: sum_{n >= start} = - sum_{n <= start - 1}
    return -geometric_family(poly, m, e, start - 1, order, -1)
