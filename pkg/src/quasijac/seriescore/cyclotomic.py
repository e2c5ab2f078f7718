"""Exact scalars: rationals (gmpy2.mpq) and elements of a cyclotomic field.

Elements of Q(w), w a primitive N-th root of unity, are stored as coordinate
tuples in the power basis 1, w, ..., w^(phi(N)-1).  Rational results collapse
back to plain ``mpq`` so that the common rational case stays fast.
"""

from __future__ import annotations

from functools import lru_cache

from gmpy2 import mpq

DEFAULT_ORDER = 4


class CyclotomicError(ValueError):
    pass


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # integer polynomials, low degree first, den monic
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    return q, num[: len(den) - 1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(order: int) -> tuple[int, ...]:
    """Coefficients of the order-th cyclotomic polynomial, constant term first."""
    if order < 1:
        raise CyclotomicError(f"cyclotomic order must be positive, got {order}")
    poly = [-1] + [0] * (order - 1) + [1]  # x^N - 1
    for d in range(1, order):
        if order % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(order: int) -> tuple[tuple[mpq, ...], ...]:
    """Coordinates of w^k for 0 <= k < 2*phi - 1 (enough for products)."""
    phi_poly = cyclotomic_polynomial(order)
    deg = len(phi_poly) - 1
    rows: list[list[mpq]] = []
    for k in range(max(2 * deg - 1, order)):
        if k < deg:
            row = [mpq(0)] * deg
            row[k] = mpq(1)
        else:
            prev = rows[k - 1]
            # w * prev, then reduce w^deg = -sum c_j w^j
            top = prev[deg - 1]
            row = [mpq(0)] + prev[: deg - 1]
            if top:
                for j in range(deg):
                    row[j] -= top * phi_poly[j]
        rows.append(row)
    return tuple(tuple(r) for r in rows)


def field_degree(order: int) -> int:
    return len(cyclotomic_polynomial(order)) - 1


class Cyc:
    """Element of the order-th cyclotomic field with at least one irrational coordinate."""

    __slots__ = ("coords", "order")

    def __init__(self, coords, order: int = DEFAULT_ORDER):
        deg = field_degree(order)
        coords = tuple(mpq(c) for c in coords)
        if len(coords) != deg:
            raise CyclotomicError(f"expected {deg} coordinates for order {order}")
        self.coords = coords
        self.order = order

    # construction helpers -------------------------------------------------
    @staticmethod
    def make(coords, order: int):
        coords = tuple(mpq(c) for c in coords)
        if not any(coords[1:]):
            return coords[0]
        obj = Cyc.__new__(Cyc)
        obj.coords = coords
        obj.order = order
        return obj

    def _coerce(self, other):
        if isinstance(other, Cyc):
            if other.order != self.order:
                raise CyclotomicError(
                    f"mixing cyclotomic orders {self.order} and {other.order}"
                )
            return other.coords
        if isinstance(other, (int, type(mpq(0)))):
            return (mpq(other),) + (mpq(0),) * (len(self.coords) - 1)
        return None

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return Cyc.make([a + b for a, b in zip(self.coords, oc)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return Cyc.make([-a for a in self.coords], self.order)

    def __sub__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return Cyc.make([a - b for a, b in zip(self.coords, oc)], self.order)

    def __rsub__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return Cyc.make([b - a for a, b in zip(self.coords, oc)], self.order)

    def __mul__(self, other):
        if isinstance(other, (int, type(mpq(0)))):
            return Cyc.make([a * other for a in self.coords], self.order)
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return Cyc.make(_mul_coords(self.coords, oc, self.order), self.order)

    __rmul__ = __mul__

    def inverse(self):
        deg = len(self.coords)
        # column j of the multiplication matrix is self * w^j
        cols = []
        for j in range(deg):
            e = [mpq(0)] * deg
            e[j] = mpq(1)
            cols.append(_mul_coords(self.coords, e, self.order))
        mat = [[cols[j][i] for j in range(deg)] for i in range(deg)]
        rhs = [mpq(1)] + [mpq(0)] * (deg - 1)
        return Cyc.make(_solve(mat, rhs), self.order)

    def __truediv__(self, other):
        if isinstance(other, (int, type(mpq(0)))):
            if other == 0:
                raise ZeroDivisionError("division by zero scalar")
            return Cyc.make([a / other for a in self.coords], self.order)
        if isinstance(other, Cyc):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, type(mpq(0)))):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = mpq(1)
        base = self
        while exponent:
            if exponent & 1:
                result = base * result
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Cyc):
            return self.order == other.order and self.coords == other.coords
        return False  # a Cyc is never rational by construction

    def __hash__(self):
        return hash((self.order, self.coords))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"Cyc({[str(c) for c in self.coords]}, order={self.order})"

    def __str__(self):
        return scalar_str(self)


def _mul_coords(a, b, order):
    deg = len(a)
    table = _power_table(order)
    conv = [mpq(0)] * (2 * deg - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    conv[i + j] += x * y
    out = list(conv[:deg])
    for k in range(deg, 2 * deg - 1):
        c = conv[k]
        if c:
            row = table[k]
            for j in range(deg):
                if row[j]:
                    out[j] += c * row[j]
    return out


def _solve(mat, rhs):
    n = len(rhs)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("division by zero scalar")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


# module-level helpers -------------------------------------------------------

MPQ = type(mpq(0))


def is_scalar(x) -> bool:
    return isinstance(x, (int, MPQ, Cyc))


def to_scalar(x):
    if isinstance(x, Cyc):
        return x
    if isinstance(x, MPQ):
        return x
    return mpq(x)


def scalar_order(x) -> int | None:
    return x.order if isinstance(x, Cyc) else None


def root_of_unity(turn, order: int = DEFAULT_ORDER):
    """exp(2 pi i * turn) for rational ``turn`` whose denominator divides ``order``."""
    turn = mpq(turn)
    k = turn * order
    if k.denominator != 1:
        raise CyclotomicError(
            f"exp(2 pi i * {turn}) is not in the cyclotomic field of order {order}"
        )
    k = int(k) % order
    return Cyc.make(_power_table(order)[k], order) if k else mpq(1)


def imaginary_unit(order: int = DEFAULT_ORDER):
    if order % 4:
        raise CyclotomicError(f"i is not in the cyclotomic field of order {order}")
    return root_of_unity(mpq(1, 4), order)


def scalar_coords(x, order: int) -> tuple:
    if isinstance(x, Cyc):
        if x.order != order:
            raise CyclotomicError(f"mixing cyclotomic orders {x.order} and {order}")
        return x.coords
    return (mpq(x),) + (mpq(0),) * (field_degree(order) - 1)


def scalar_inverse(x):
    if isinstance(x, Cyc):
        return x.inverse()
    if x == 0:
        raise ZeroDivisionError("division by zero scalar")
    return mpq(1) / x


def scalar_pow(x, e: int):
    if isinstance(x, Cyc):
        return x ** e
    return mpq(x) ** e


def scalar_str(x) -> str:
    if not isinstance(x, Cyc):
        return str(mpq(x))
    parts = []
    for j, c in enumerate(x.coords):
        if not c:
            continue
        basis = "" if j == 0 else ("w" if j == 1 else f"w^{j}")
        if not basis:
            parts.append(str(c))
        elif c == 1:
            parts.append(basis)
        elif c == -1:
            parts.append("-" + basis)
        else:
            parts.append(f"{c}*{basis}")
    text = " + ".join(parts).replace("+ -", "- ")
    return f"({text})[w^{x.order}=1]"
