"""Jacobi-form coefficient tables and the coefficient-level checks on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

from gmpy2 import mpq

from .seriescore import CoefFn, FourierSeries, Cyc, mono, scalar_str
from .seriescore.cyclotomic import scalar_coords
from .seriescore.series import TruncationError


class JacobiError(ValueError):
    pass


def _q(x) -> mpq:
    return mpq(x)


def _frac(x) -> mpq:
    x = _q(x)
    return x - x.__floor__()


@dataclass
class JacobiForm:
    """Finite table c(n, r) for n < bound, with weight/index/multiplier data.

    ``rho`` holds (rho_1, rho_2); ``parity`` is chi(-I); ``torsion`` is the
    optional (a, N) describing chi(2/alpha, 0).
    """

    weight: mpq
    index: mpq
    table: dict
    bound: mpq
    rho: tuple = (mpq(0), mpq(0))
    parity: int = 1
    torsion: tuple | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.weight = _q(self.weight)
        self.index = _q(self.index)
        self.bound = _q(self.bound)
        self.rho = (_q(self.rho[0]), _q(self.rho[1]))
        self.table = {
            (_q(n), _q(r)): c for (n, r), c in self.table.items() if c != 0 and _q(n) < self.bound
        }

    # construction ---------------------------------------------------------
    @classmethod
    def from_counts(cls, weight, index, counts: dict, bound=None) -> "JacobiForm":
        """From {(2n, r): count}; ``bound`` defaults to one past the largest n."""
        table = {(mpq(n2, 2), mpq(r)): mpq(c) for (n2, r), c in counts.items()}
        if bound is None:
            bound = max((n for n, _ in table), default=mpq(-1)) + 1
        return cls(weight, index, table, bound)

    @classmethod
    def from_series(cls, weight, index, series: FourierSeries, parity: int = 1) -> "JacobiForm":
        if series.order is None:
            raise JacobiError("a Jacobi table needs a truncated series")
        table = {}
        rho1 = None
        rho2 = None
        for e, c in series.terms.items():
            c = c.reduce()
            if not c.is_polynomial():
                raise JacobiError(f"coefficient of q^{e} is not a Laurent polynomial in zeta")
            for m, val in c.num.items():
                if m[1]:
                    raise JacobiError("Jacobi tables carry only the zeta variable")
                table[(e, m[0])] = val
                rho1 = _frac(e) if rho1 is None else rho1
                rho2 = _frac(m[0]) if rho2 is None else rho2
        rho = (rho1 or mpq(0), rho2 or mpq(0))
        return cls(weight, index, table, series.order, rho, parity)

    # access ---------------------------------------------------------------
    def coefficient(self, n, r, extend: bool = False):
        """c(n, r); with ``extend`` use c(n + l r + m l^2, r + 2 m l) = c(n, r)."""
        n, r = _q(n), _q(r)
        if n < self.bound:
            return self.table.get((n, r), mpq(0))
        if not extend:
            raise TruncationError(f"c({n}, {r}) lies beyond the table bound {self.bound}")
        if self.index <= 0 or self.rho != (0, 0):
            raise JacobiError("index-shift extension needs positive index and trivial multiplier")
        two_m = 2 * self.index
        ell = -(r / two_m + mpq(1, 2)).__floor__()
        r2 = r + two_m * ell
        n2 = n + ell * r + self.index * ell * ell
        if n2 >= self.bound:
            raise TruncationError(
                f"c({n}, {r}) reduces to c({n2}, {r2}), beyond the table bound {self.bound}"
            )
        return self.table.get((n2, r2), mpq(0))

    def to_series(self, order=None) -> FourierSeries:
        order = self.bound if order is None else min(_q(order), self.bound)
        terms: dict = {}
        for (n, r), c in self.table.items():
            if n < order:
                terms.setdefault(n, {})[mono(zeta=r)] = c
        return FourierSeries({n: CoefFn(t) for n, t in terms.items()}, order)

    def discriminants(self) -> list:
        return sorted({4 * self.index * n - r * r for (n, r) in self.table})

    def to_dict(self) -> dict:
        def coef(c):
            if isinstance(c, Cyc):
                return {"coords": [str(x) for x in scalar_coords(c, c.order)], "order": c.order}
            return str(c)

        return {
            "weight": str(self.weight),
            "index": str(self.index),
            "rho": [str(self.rho[0]), str(self.rho[1])],
            "parity": self.parity,
            "q_order": str(self.bound),
            "table": [[str(n), str(r), coef(self.table[(n, r)])] for (n, r) in sorted(self.table)],
        }


# ---------------------------------------------------------------------------


def classify_support(phi: JacobiForm) -> str:
    """Strongest support class of the stored table: holomorphic, cusp, weak or none."""
    if not phi.table:
        return "cusp"
    for (n, r) in phi.table:
        if _frac(r) != phi.rho[1]:
            return "none"
    discs = [4 * phi.index * n - r * r for (n, r) in phi.table]
    if all(d > 0 for d in discs):
        return "cusp"
    if all(d >= 0 for d in discs):
        return "holomorphic"
    return "weak"


def elliptic_witness(series: FourierSeries, index, lam: int, sign: int = 1):
    """First violation of c(n, r) = sign * c(n + lam r + m lam^2, r + 2 m lam).

    Pairs are checked when both sides lie inside the known window.  Returns None
    when the law holds there; raises if the window contains no pair at all.
    """
    index = _q(index)
    if series.order is None:
        raise JacobiError("elliptic check needs a truncated series")
    table = {}
    for e, c in series.terms.items():
        c = c.reduce()
        if not c.is_polynomial():
            raise JacobiError(f"coefficient of q^{e} is not polynomial in the checked window")
        for m, val in c.num.items():
            table[(e, m[0])] = val
    order = series.order
    checked = 0
    seen = set()
    for (n, r) in sorted(table):
        for step in (lam, -lam):
            n2 = n + step * r + index * step * step
            r2 = r + 2 * index * step
            if n2 >= order:
                continue
            pair = ((n, r), (n2, r2)) if step == lam else ((n2, r2), (n, r))
            if pair in seen:
                continue
            seen.add(pair)
            checked += 1
            (a, b) = pair
            lhs = table.get(a, mpq(0))
            rhs = table.get(b, mpq(0))
            if lhs != sign * rhs:
                return {"pair": [[str(x) for x in a], [str(x) for x in b]],
                        "values": [scalar_str(lhs), scalar_str(rhs)]}
    if not checked:
        raise JacobiError("window too small: no coefficient pair lies inside it")
    return None


def elliptic_check(series: FourierSeries, index, lam: int = 1, sign: int = 1) -> bool:
    """Does phi(z + lam tau) = sign q^(-m lam^2) zeta^(-2 m lam) phi(z) hold in the window?"""
    return elliptic_witness(series, index, lam, sign) is None


def sumzero_check(character: FourierSeries, norm_j, lam: int, central_charge) -> mpq:
    """sum_{n>=1, lam | 2n} (4n/(<J,J> lam^2) - 1) dim V_{n, 2n/lam}.

    ``character`` is sum dim V_{n,r} zeta^r q^(n - c/24).  Contributions vanish
    for n > <J,J> lam^2 / 2 (Cauchy-Schwarz on the charge lattice); the table
    must reach that far.
    """
    if lam == 0:
        raise JacobiError("lambda must be nonzero")
    norm_j = _q(norm_j)
    shifted = character.shift(mpq(central_charge, 24))
    n_max = norm_j * lam * lam / 2
    if shifted.order is None or shifted.order <= n_max:
        raise JacobiError(f"character known below q^{shifted.order}, need beyond n = {n_max}")
    total = mpq(0)
    n = 1
    while n <= n_max:
        if (2 * n) % lam == 0:
            r = mpq(2 * n, lam)
            dim = shifted.extract(n, mono(zeta=r))
            total += (mpq(4 * n) / (norm_j * lam * lam) - 1) * dim
        n += 1
    return total


def _ge_one_plus_root_bound(alpha_abs: int, m: mpq) -> bool:
    """|alpha| >= 1 + 2 sqrt(m)(sqrt 2 - 1), decided exactly."""
    lhs = mpq(alpha_abs - 1)
    if lhs < 0:
        return False
    # (|a|-1)^2 >= 4 m (3 - 2 sqrt 2)  <=>  (|a|-1)^2 - 12 m >= -8 m sqrt 2
    t = lhs * lhs - 12 * m
    if t >= 0:
        return True
    return t * t <= 128 * m * m


def coefficient_criterion(phi: JacobiForm, alpha: int) -> dict:
    """Evaluate the c(1, h_m) = 0 requirement for T_{k,alpha} to stay pole-free."""
    if alpha == 0:
        raise JacobiError("alpha must be nonzero")
    if phi.rho != (0, 0):
        raise JacobiError("the criterion assumes a trivial multiplier")
    if phi.bound <= 1:
        raise JacobiError("table does not cover n = 1")
    m = phi.index
    h_m = isqrt(int((4 * m).__floor__()))
    a = abs(alpha)
    strong = _ge_one_plus_root_bound(a, m) and mpq(h_m) != 2 * m / a
    weak = a * a > m
    required = strong or weak
    value = phi.coefficient(1, h_m)
    cusp_at_zero = all(n != 0 for (n, _) in phi.table)
    report = {
        "index": str(m),
        "alpha": alpha,
        "h_m": h_m,
        "gate_root_bound": strong,
        "gate_sqrt_m": weak,
        "requirement": required,
        "c_1_h": scalar_str(value),
        "holds": value == 0,
        "vanishes_at_n0": cusp_at_zero,
    }
    report["consistent"] = (not required) or value == 0
    if required and value != 0 and not cusp_at_zero:
        report["note"] = (
            "requirement fails while c(0, r) != 0: the n = 0 terms can cancel the "
            "lowest residue, so the conclusion needs vanishing constant terms"
        )
    elif required and value != 0:
        report["note"] = "T_{k,alpha} introduces poles"
    return report


__all__ = [
    "JacobiError",
    "JacobiForm",
    "classify_support",
    "coefficient_criterion",
    "elliptic_check",
    "elliptic_witness",
    "sumzero_check",
]
