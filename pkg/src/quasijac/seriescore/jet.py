"""Finite Laurent jets in W = 2 pi i w with FourierSeries coefficients."""

from __future__ import annotations

from math import comb, factorial

from gmpy2 import mpq

from .coef import ONE, CoefFn
from .series import FourierSeries, SeriesError, _min_order


class JetError(SeriesError):
    pass


def bernoulli_numbers(n: int) -> list:
    """B_0..B_n with the convention B_1 = -1/2."""
    b = [mpq(0)] * (n + 1)
    b[0] = mpq(1)
    for m in range(1, n + 1):
        b[m] = -sum(comb(m + 1, k) * b[k] for k in range(m)) / (m + 1)
    return b


class WJet:
    """sum_{k < order} c_k W^k; coefficients missing from the map are zero."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: dict, order: int):
        self.order = int(order)
        self.coeffs = {
            int(k): (c if isinstance(c, FourierSeries) else FourierSeries.const(c))
            for k, c in coeffs.items()
            if k < order
        }

    # inspection -----------------------------------------------------------
    def coefficient(self, k: int) -> FourierSeries:
        if k >= self.order:
            raise JetError(f"W^{k} is at or beyond the jet order {self.order}")
        return self.coeffs.get(k, FourierSeries.zero())

    def lowest(self) -> int:
        live = [k for k, c in self.coeffs.items() if not c.is_zero()]
        if not live:
            raise JetError("jet has no nonzero coefficient below its order")
        return min(live)

    def pole_order(self) -> int:
        try:
            return max(0, -self.lowest())
        except JetError:
            return 0

    def q_order(self):
        o = None
        for c in self.coeffs.values():
            o = _min_order(o, c.order)
        return o

    # arithmetic -----------------------------------------------------------
    def _wrap(self, other) -> "WJet":
        if isinstance(other, WJet):
            return other
        return WJet({0: other}, 10**9)

    def __add__(self, other):
        other = self._wrap(other)
        order = min(self.order, other.order)
        out = {}
        for src in (self.coeffs, other.coeffs):
            for k, c in src.items():
                if k < order:
                    out[k] = out[k] + c if k in out else c
        return WJet(out, order)

    __radd__ = __add__

    def __neg__(self):
        return WJet({k: -c for k, c in self.coeffs.items()}, self.order)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "WJet":
        return WJet({k: s.scale(c) for k, s in self.coeffs.items()}, self.order)

    def shift(self, k: int) -> "WJet":
        """Multiply by W^k."""
        return WJet({j + k: c for j, c in self.coeffs.items()}, self.order + k)

    def _valuation(self) -> int:
        live = [k for k, c in self.coeffs.items() if not c.is_zero()]
        return min(live) if live else self.order

    def __mul__(self, other):
        if not isinstance(other, (WJet, FourierSeries)):
            return self.scale(other)
        if isinstance(other, FourierSeries):
            return WJet({k: c * other for k, c in self.coeffs.items()}, self.order)
        va, vb = self._valuation(), other._valuation()
        order = min(self.order + vb, other.order + va)
        out: dict = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                if i + j < order:
                    p = a * b
                    out[i + j] = out[i + j] + p if i + j in out else p
        return WJet(out, order)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = WJet({0: FourierSeries.const(1)}, 10**9)
        for _ in range(k):
            result = result * self
        return result

    def inverse(self) -> "WJet":
        v = self.lowest()
        lead_inv = self.coeffs[v].inverse()
        rel = self.order - v
        out = {0: lead_inv}
        for k in range(1, rel):
            acc = None
            for d in range(1, k + 1):
                a = self.coeffs.get(v + d)
                if a is None or k - d not in out:
                    continue
                t = a * out[k - d]
                acc = t if acc is None else acc + t
            if acc is not None:
                out[k] = -(acc * lead_inv)
        return WJet({k - v: c for k, c in out.items()}, rel - v)

    def __truediv__(self, other):
        if isinstance(other, WJet):
            return self * other.inverse()
        if isinstance(other, FourierSeries):
            return self * other.inverse()
        return self.scale(mpq(1) / other)

    def log(self) -> "WJet":
        """log of a jet 1 + X with X = O(W)."""
        if self._valuation() < 0:
            raise JetError("log of a jet with a pole part")
        c0 = self.coeffs.get(0)
        if c0 is None or not c0.equals(FourierSeries.const(1, c0.order)) or c0.order is not None and c0.order <= 0:
            raise JetError("log needs the W^0 coefficient to be exactly 1")
        x = self - WJet({0: FourierSeries.const(1)}, self.order)
        # log(1+x) = sum (-1)^{j-1} x^j / j
        result = WJet({}, self.order)
        power = WJet({0: FourierSeries.const(1)}, self.order)
        for j in range(1, self.order):
            power = power * x
            result = result + power.scale(mpq((-1) ** (j - 1), j))
        return result

    def exp(self) -> "WJet":
        if self._valuation() < 0:
            raise JetError("exp of a jet with a pole part")
        c0 = self.coeffs.get(0)
        if c0 is not None and not c0.is_zero():
            raise JetError("exp needs a vanishing W^0 coefficient")
        result = WJet({0: FourierSeries.const(1)}, self.order)
        power = WJet({0: FourierSeries.const(1)}, self.order)
        for j in range(1, self.order):
            power = power * self
            result = result + power.scale(mpq(1, factorial(j)))
        return result

    def reduce(self) -> "WJet":
        return WJet({k: c.reduce() for k, c in self.coeffs.items()}, self.order)

    def map_coefficients(self, fn) -> "WJet":
        return WJet({k: fn(c) for k, c in self.coeffs.items()}, self.order)

    def first_difference(self, other: "WJet"):
        order = min(self.order, other.order)
        for k in sorted(set(self.coeffs) | set(other.coeffs)):
            if k >= order:
                break
            a = self.coeffs.get(k, FourierSeries.zero())
            b = other.coeffs.get(k, FourierSeries.zero())
            diff = a.first_difference(b)
            if diff is not None:
                return (k,) + diff
        return None

    def equals(self, other: "WJet") -> bool:
        return self.first_difference(other) is None

    def __repr__(self):
        body = "; ".join(f"W^{k}: {self.coeffs[k]}" for k in sorted(self.coeffs))
        return f"WJet({body}; O(W^{self.order}))"


def constant_jet(c, order: int) -> WJet:
    return WJet({0: c if isinstance(c, FourierSeries) else FourierSeries.const(c)}, order)


def w_monomial(k: int, order: int) -> WJet:
    return WJet({k: FourierSeries.const(1)}, order)


def shift_argument(s: FourierSeries, var: int, order: int) -> WJet:
    """f(z + w) as sum_j D_z^j f(z) W^j / j!."""
    out = {}
    cur = s
    for j in range(order):
        if j:
            cur = cur.derive(var)
        out[j] = cur.scale(mpq(1, factorial(j)))
    return WJet(out, order)


def jet_from_series(s: FourierSeries, var: int, order: int) -> WJet:
    """Laurent expansion at var = 1, writing var = e^W.

    Each coefficient is split into its polar denominator factors (those that
    vanish at var = 1) and a regular remainder whose W-Taylor coefficients are
    iterated D_var derivatives evaluated at var = 1.
    """
    acc: WJet | None = None
    for e, c in sorted(s.terms.items()):
        piece = _coefficient_jet(c.reduce(), var, order)
        piece = WJet(
            {k: FourierSeries.monomial(e, ONE, 1, s.order) * v for k, v in piece.coeffs.items()},
            piece.order,
        )
        piece = WJet({k: v.truncate(s.order) for k, v in piece.coeffs.items()}, piece.order)
        acc = piece if acc is None else acc + piece
    if acc is None:
        return WJet({0: FourierSeries.zero(s.order)}, order)
    if s.order is not None:
        acc = WJet(
            {k: v.truncate(s.order) for k, v in acc.coeffs.items()},
            acc.order,
        )
        # keep truncation information on every coefficient slot
        filled = dict(acc.coeffs)
        for k in range(min(filled, default=0), acc.order):
            filled.setdefault(k, FourierSeries.zero(s.order))
        acc = WJet(filled, acc.order)
    return acc


def _coefficient_jet(c: CoefFn, var: int, order: int) -> WJet:
    polar = [(u, e) for u, e in c.den if u[var] and not any(x for i, x in enumerate(u) if i != var)]
    rest_den = tuple((u, e) for u, e in c.den if (u, e) not in polar)
    regular = CoefFn._raw(c.num, rest_den)
    pole = sum(e for _, e in polar)
    need = order + pole  # Taylor terms needed from the regular part
    reg_terms = {}
    cur = regular
    for j in range(max(need, 0)):
        if j:
            cur = cur.derive(var)
        val = cur.evaluate_at_one(var).scale(mpq(1, factorial(j)))
        if not val.is_zero():
            reg_terms[j] = FourierSeries({0: val})
    jet = WJet(reg_terms, max(need, 0))
    for u, e in polar:
        factor = _polar_factor_jet(u[var], order + pole)
        for _ in range(e):
            jet = jet * factor
    return WJet(dict(jet.coeffs), order) if jet.order >= order else jet


def _polar_factor_jet(exponent, order: int) -> WJet:
    """1/(1 - e^{a W}) = -(1/(aW)) sum_k B_k (aW)^k / k!."""
    a = mpq(exponent)
    bern = bernoulli_numbers(order + 1)
    coeffs = {}
    for k in range(order + 1):
        if bern[k]:
            coeffs[k - 1] = FourierSeries.const(-bern[k] * a ** (k - 1) / factorial(k))
    return WJet(coeffs, order)
