"""Exponential monomials and rational coefficient functions.

A monomial is a tuple of rational exponents over the fixed alphabet
``VARIABLES``.  A :class:`CoefFn` is ``num / prod (1 - u)^e`` where ``num`` is a
finite Scalar-weighted sum of monomials and each ``u`` is a monomial whose first
nonzero exponent is positive.
"""

from __future__ import annotations

from math import gcd, lcm

from gmpy2 import mpq

from .cyclotomic import (
    DEFAULT_ORDER,
    Cyc,
    MPQ,
    root_of_unity,
    scalar_inverse,
    scalar_pow,
)

VARIABLES = ("zeta", "qw")
ZETA = 0
QW = 1
NVARS = len(VARIABLES)
ONE = (mpq(0),) * NVARS
ZERO_Q = mpq(0)


class CoefError(ValueError):
    pass


# ---------------------------------------------------------------------------
# monomials


def var_index(name: str) -> int:
    try:
        return VARIABLES.index(name)
    except ValueError:
        raise CoefError(f"unknown variable {name!r}; alphabet is {VARIABLES}") from None


def mono(**exps) -> tuple:
    out = [mpq(0)] * NVARS
    for name, e in exps.items():
        out[var_index(name)] = mpq(e)
    return tuple(out)


def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def mono_pow(a: tuple, k) -> tuple:
    return tuple(x * k for x in a)


def mono_inv(a: tuple) -> tuple:
    return tuple(-x for x in a)


def mono_is_one(a: tuple) -> bool:
    return not any(a)


def _leading_sign(a: tuple) -> int:
    for x in a:
        if x:
            return 1 if x > 0 else -1
    return 0


def _leading_index(a: tuple) -> int:
    for i, x in enumerate(a):
        if x:
            return i
    raise CoefError("the unit monomial has no direction")


def mono_str(a: tuple) -> str:
    parts = []
    for name, e in zip(VARIABLES, a):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


# ---------------------------------------------------------------------------
# sparse Laurent polynomials: dict mono -> scalar


def _padd(acc: dict, m: tuple, c) -> None:
    v = acc.get(m)
    v = c if v is None else v + c
    if v == 0:
        acc.pop(m, None)
    else:
        acc[m] = v


def poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            _padd(out, mono_mul(ma, mb), ca * cb)
    return out


def poly_add(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for m, c in b.items():
        _padd(out, m, c if sign > 0 else -c)
    return out


def poly_times_binomial(p: dict, u: tuple, times: int = 1) -> dict:
    """p * (1 - u)^times."""
    for _ in range(times):
        out = dict(p)
        for m, c in p.items():
            _padd(out, mono_mul(m, u), -c)
        p = out
    return p


def _rational_gcd(values) -> mpq:
    num = 0
    den = 1
    for v in values:
        v = mpq(v)
        if v:
            num = gcd(num, int(v.numerator))
            den = lcm(den, int(v.denominator))
    return mpq(num, den)


# ---------------------------------------------------------------------------
# univariate helpers used along one direction


def _upoly_mul(a: list, b: list) -> list:
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _upoly_divexact(a: list, d: list) -> list | None:
    """a / d for monic-or-unit-leading integer d; None if not exact."""
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    if not a:
        return []
    n = len(d) - 1
    if len(a) - 1 < n:
        return None
    lead = d[-1]
    q = [mpq(0)] * (len(a) - n)
    for i in range(len(a) - 1 - n, -1, -1):
        c = a[i + n]
        if c:
            c = c / lead if lead != 1 else c
            q[i] = c
            for j, dj in enumerate(d):
                if dj:
                    a[i + j] -= c * dj
    if any(a[:n]):
        return None
    return q


def _cyclo_int(d: int) -> list:
    from .cyclotomic import cyclotomic_polynomial

    return [mpq(c) for c in cyclotomic_polynomial(d)]


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# ---------------------------------------------------------------------------


def _normalize_factor(u: tuple, e: int, num: dict) -> tuple[tuple, dict]:
    """Rewrite (1-u)^-e with normalized u, adjusting the numerator."""
    s = _leading_sign(u)
    if s == 0:
        raise ZeroDivisionError("denominator factor (1 - 1) vanishes")
    if s > 0:
        return u, num
    inv = mono_inv(u)
    # 1/(1-u) = -u^{-1}/(1-u^{-1})
    factor = {mono_pow(inv, e): mpq(-1) ** e}
    return inv, poly_mul(num, factor)


class CoefFn:
    """Rational function num / prod(1 - u)^e in the exponential variables."""

    __slots__ = ("num", "den")

    def __init__(self, num: dict | None = None, den=()):
        num = {m: c for m, c in (num or {}).items() if c != 0}
        merged: dict = {}
        for u, e in den:
            if e == 0:
                continue
            if e < 0:
                num = poly_times_binomial(num, u, -e)
                continue
            u2, num = _normalize_factor(tuple(mpq(x) for x in u), e, num)
            merged[u2] = merged.get(u2, 0) + e
        self.num = num
        self.den = tuple(sorted(merged.items()))

    @classmethod
    def _raw(cls, num: dict, den: tuple) -> "CoefFn":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    # constructors ---------------------------------------------------------
    @classmethod
    def const(cls, c) -> "CoefFn":
        return cls._raw({ONE: c} if c != 0 else {}, ())

    @classmethod
    def monomial(cls, m: tuple, c=1) -> "CoefFn":
        c = mpq(c) if isinstance(c, int) else c
        return cls._raw({tuple(mpq(x) for x in m): c} if c != 0 else {}, ())

    @classmethod
    def geometric(cls, u: tuple, start: int = 1) -> "CoefFn":
        """sum_{n>=start} u^n as a rational function."""
        return cls({mono_pow(u, start): mpq(1)}, ((u, 1),))

    # predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return not self.den

    def constant_value(self):
        """The scalar if this is a constant, else None."""
        if self.den:
            return None
        if not self.num:
            return mpq(0)
        if len(self.num) == 1 and ONE in self.num:
            return self.num[ONE]
        return None

    def depends_on(self, v: int) -> bool:
        return any(m[v] for m in self.num) or any(u[v] for u, _ in self.den)

    # arithmetic -----------------------------------------------------------
    def _lifted(self, target: dict) -> dict:
        num = self.num
        mine = dict(self.den)
        for u, e in target.items():
            extra = e - mine.get(u, 0)
            if extra:
                num = poly_times_binomial(num, u, extra)
        return num

    def _combine(self, other: "CoefFn", sign: int) -> "CoefFn":
        if self.den == other.den:
            return CoefFn._raw(poly_add(self.num, other.num, sign), self.den)
        target = dict(self.den)
        for u, e in other.den:
            if target.get(u, 0) < e:
                target[u] = e
        num = poly_add(self._lifted(target), other._lifted(target), sign)
        return CoefFn._raw(num, tuple(sorted(target.items())))

    def __add__(self, other):
        if not isinstance(other, CoefFn):
            other = CoefFn.const(other)
        if not other.num:
            return self
        if not self.num:
            return other
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, CoefFn):
            other = CoefFn.const(other)
        if not other.num:
            return self
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return CoefFn._raw({m: -c for m, c in self.num.items()}, self.den)

    def scale(self, c) -> "CoefFn":
        if c == 0:
            return CoefFn._raw({}, ())
        if c == 1:
            return self
        return CoefFn._raw({m: x * c for m, x in self.num.items()}, self.den)

    def shift(self, m: tuple) -> "CoefFn":
        if mono_is_one(m):
            return self
        return CoefFn._raw({mono_mul(k, m): c for k, c in self.num.items()}, self.den)

    def __mul__(self, other):
        if not isinstance(other, CoefFn):
            return self.scale(other)
        if not self.num or not other.num:
            return CoefFn._raw({}, ())
        if not other.den:
            den = self.den
        elif not self.den:
            den = other.den
        else:
            merged = dict(self.den)
            for u, e in other.den:
                merged[u] = merged.get(u, 0) + e
            den = tuple(sorted(merged.items()))
        if len(other.num) == 1:
            (m, c), = other.num.items()
            num = {mono_mul(k, m): x * c for k, x in self.num.items()}
        elif len(self.num) == 1:
            (m, c), = self.num.items()
            num = {mono_mul(k, m): x * c for k, x in other.num.items()}
        else:
            num = poly_mul(self.num, other.num)
        return CoefFn._raw(num, den)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CoefFn):
            other = CoefFn.const(other)
        return (self - other).is_zero()

    __hash__ = None

    def invert(self) -> "CoefFn":
        """1/self for a monomial or binomial (root-of-unity ratio) numerator."""
        c = self.reduce()
        num_of_inverse = {ONE: mpq(1)}
        for u, e in c.den:
            num_of_inverse = poly_times_binomial(num_of_inverse, u, e)
        terms = sorted(c.num.items())
        if not terms:
            raise ZeroDivisionError("inverse of the zero coefficient")
        if len(terms) == 1:
            (m, a), = terms
            return CoefFn(
                {mono_mul(k, mono_inv(m)): x * scalar_inverse(a) for k, x in num_of_inverse.items()}
            )
        if len(terms) == 2:
            (mu, a), (mv, b) = terms
            # a*mu + b*mv = a*mu*(1 - r*w), r = -b/a, w = mv/mu
            r = -b * scalar_inverse(a)
            w = mono_mul(mv, mono_inv(mu))
            pref = {mono_inv(mu): scalar_inverse(a)}
            if _leading_sign(w) < 0:
                # 1 - r w = -r w (1 - r^-1 w^-1)
                pref = {mono_mul(mono_inv(mu), mono_inv(w)): -scalar_inverse(a) * scalar_inverse(r)}
                r = scalar_inverse(r)
                w = mono_inv(w)
            k = _root_order(r)
            if k is None:
                raise CoefError("cannot invert a binomial whose ratio is not a root of unity")
            series = {mono_pow(w, j): scalar_pow(r, j) for j in range(k)}
            num = poly_mul(poly_mul(num_of_inverse, pref), series)
            return CoefFn(num, ((mono_pow(w, k), 1),))
        raise CoefError(f"cannot invert coefficient with {len(terms)} numerator terms")

    def __truediv__(self, other):
        if isinstance(other, CoefFn):
            return self * other.invert()
        return self.scale(scalar_inverse(other))

    # calculus -------------------------------------------------------------
    def derive(self, v: int) -> "CoefFn":
        """D_v: multiplies each monomial by its exponent in variable v."""
        dnum = {m: c * m[v] for m, c in self.num.items() if m[v]}
        dep = [(u, e) for u, e in self.den if u[v]]
        if not dep:
            return CoefFn._raw({k: c for k, c in dnum.items() if c != 0}, self.den)
        # D(N/F) with F = prod f_i^e_i: new den bumps each dependent factor once
        first = dnum
        for u, _ in dep:
            first = poly_times_binomial(first, u)
        second: dict = {}
        for i, (u, e) in enumerate(dep):
            # -N * e_i * D(f_i) * prod_{j != i} f_j,  D(f_i) = -u_v * u
            term = {mono_mul(m, u): c * e * u[v] for m, c in self.num.items()}
            for j, (w, _) in enumerate(dep):
                if j != i:
                    term = poly_times_binomial(term, w)
            second = poly_add(second, term)
        bumped = dict(self.den)
        for u, _ in dep:
            bumped[u] += 1
        return CoefFn._raw(poly_add(first, second), tuple(sorted(bumped.items())))

    # substitution without a q shift ---------------------------------------
    def substitute(self, v: int, image: tuple, turn=0, order: int = DEFAULT_ORDER) -> "CoefFn":
        """v -> exp(2 pi i turn) * image (image may involve v itself)."""
        turn = mpq(turn)

        def phase(e):
            return root_of_unity(turn * e, order) if turn else mpq(1)

        def move(m):
            rest = list(m)
            rest[v] = mpq(0)
            return mono_mul(tuple(rest), mono_pow(image, m[v]))

        num = {}
        for m, c in self.num.items():
            _padd(num, move(m), c * phase(m[v]))
        result = CoefFn(num)
        for u, e in self.den:
            result = result * _inverse_binomial(move(u), phase(u[v]), e)
        return result

    def evaluate_at_one(self, v: int) -> "CoefFn":
        """Set variable v to 1; raises if a denominator factor vanishes there."""
        c = self.reduce()
        return c.substitute(v, ONE)

    # canonical form -------------------------------------------------------
    def reduce(self) -> "CoefFn":
        """Cancel common cyclotomic factors direction by direction."""
        if not self.den or not self.num:
            return CoefFn._raw(self.num, () if not self.num else self.den)
        groups: dict = {}
        for u, e in self.den:
            g = _rational_gcd(u)
            p = tuple(x / g for x in u)
            groups.setdefault(p, []).append((g, u, e))
        num = self.num
        den: list = []
        for p, items in sorted(groups.items()):
            num, new = _reduce_direction(num, p, items)
            den.extend(new)
        return CoefFn._raw(num, tuple(sorted(den)))

    # display --------------------------------------------------------------
    def __repr__(self):
        return f"CoefFn({self})"

    def __str__(self):
        from .cyclotomic import scalar_str

        if not self.num:
            return "0"
        parts = []
        for m, c in sorted(self.num.items()):
            ms = mono_str(m)
            cs = scalar_str(c)
            parts.append(cs if ms == "1" else (ms if c == 1 else f"{cs}*{ms}"))
        text = " + ".join(parts)
        if not self.den:
            return text
        dens = "*".join(
            f"(1-{mono_str(u)})" + (f"^{e}" if e > 1 else "") for u, e in self.den
        )
        return f"({text})/({dens})"


def _root_order(r, limit: int = 48) -> int | None:
    x = r
    for k in range(1, limit + 1):
        if x == 1:
            return k
        x = x * r
    return None


def _inverse_binomial(u: tuple, c, e: int) -> CoefFn:
    """1/(1 - c u)^e with c a root of unity."""
    if c == 1:
        if mono_is_one(u):
            raise ZeroDivisionError("substitution makes a denominator vanish")
        return CoefFn({ONE: mpq(1)}, ((u, e),))
    if mono_is_one(u):
        return CoefFn.const(scalar_inverse(scalar_pow(1 - c, e)))
    k = _root_order(c)
    if k is None:
        raise CoefError("phase is not a root of unity")
    series = {mono_pow(u, j): scalar_pow(c, j) for j in range(k)}
    num = {ONE: mpq(1)}
    for _ in range(e):
        num = poly_mul(num, series)
    return CoefFn(num, ((mono_pow(u, k), e),))


def _reduce_direction(num: dict, p: tuple, items: list) -> tuple[dict, list]:
    """Minimal binomial denominator along one primitive direction p."""
    lead = _leading_index(p)
    # finest step: denominators plus numerator offsets along p
    offsets = [g for g, _, _ in items]
    lines: dict = {}
    for m in num:
        t = m[lead] / p[lead]
        key = tuple(mi - t * pi for mi, pi in zip(m, p))
        if key in lines:
            offsets.append(t - lines[key])
        else:
            lines[key] = t
    g0 = _rational_gcd(offsets)
    x = tuple(c * g0 for c in p)
    ks = {}
    for g, _, e in items:
        k = int(g / g0)
        ks[k] = ks.get(k, 0) + e
    big = 1
    for k in ks:
        big = lcm(big, k)
    a_d = {d: sum(e for k, e in ks.items() if k % d == 0) for d in _divisors(big)}
    a_d = {d: a for d, a in a_d.items() if a}

    # chains: base monomial -> {step: coef}
    chains: dict = {}
    for m, c in num.items():
        t = (m[lead] / x[lead])
        t = int(t.__floor__())
        base = tuple(mi - t * xi for mi, xi in zip(m, x))
        chains.setdefault(base, {})[t] = c
    polys = {}
    for base, steps in chains.items():
        lo = min(steps)
        hi = max(steps)
        arr = [mpq(0)] * (hi - lo + 1)
        for t, c in steps.items():
            arr[t - lo] = c
        polys[base] = (lo, arr)

    residual = {}
    for d, a in a_d.items():
        phi = _cyclo_int(d)
        v = a
        for lo, arr in polys.values():
            count = 0
            cur = arr
            while count < v:
                nxt = _upoly_divexact(cur, phi)
                if nxt is None:
                    break
                cur = nxt
                count += 1
            v = min(v, count)
            if v == 0:
                break
        residual[d] = a - v
    big_new = 1
    e_new = 0
    for d, r in residual.items():
        if r > 0:
            big_new = lcm(big_new, d)
            e_new = max(e_new, r)
    if big_new == big and e_new == max(a_d.values()) and all(
        a_d[d] == e_new for d in a_d
    ) and len(ks) == 1:
        # already a single minimal factor; nothing to cancel
        return num, [(mono_pow(x, big), e_new)]

    # 1 - x^k = -prod_{d | k} Phi_d(x)
    parity = (e_new - sum(ks.values())) % 2
    mult = [mpq(-1) if parity else mpq(1)]
    net: dict = {}
    for d in set(_divisors(big_new) if e_new else []) | set(a_d):
        n = (e_new if e_new and big_new % d == 0 else 0) - a_d.get(d, 0)
        if n:
            net[d] = n
    for d, n in net.items():
        if n > 0:
            for _ in range(n):
                mult = _upoly_mul(mult, _cyclo_int(d))
    out: dict = {}
    for base, (lo, arr) in polys.items():
        cur = _upoly_mul(arr, mult)
        for d, n in net.items():
            for _ in range(-n):
                cur = _upoly_divexact(cur, _cyclo_int(d))
                assert cur is not None, "cyclotomic cancellation was not exact"
        for i, c in enumerate(cur):
            if c:
                _padd(out, mono_mul(base, mono_pow(x, lo + i)), c)
    den = [(mono_pow(x, big_new), e_new)] if e_new else []
    return out, den


def coef_from_scalar_dict(d: dict) -> CoefFn:
    return CoefFn(d)


def is_cyc(x) -> bool:
    return isinstance(x, Cyc)


__all__ = [
    "VARIABLES",
    "ZETA",
    "QW",
    "ONE",
    "CoefFn",
    "CoefError",
    "mono",
    "mono_mul",
    "mono_pow",
    "mono_inv",
    "mono_str",
    "var_index",
    "MPQ",
]
