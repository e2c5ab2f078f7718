"""Second-order differential operators on (q; zeta)-series and the residue functional."""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from gmpy2 import mpq

from .forms import eisenstein, gtilde
from .seriescore import ZETA, FourierSeries, mono, root_of_unity
from .seriescore.cyclotomic import DEFAULT_ORDER, scalar_inverse
from .seriescore.series import TruncationError


class OperatorError(ValueError):
    pass


@dataclass(frozen=True)
class OpSpec:
    """Parameters of M_{(A,B),k,alpha,m}."""

    A: object = 1
    B: object = 0
    k: object = 0
    alpha: int = 1
    m: object = 1

    def __post_init__(self):
        if self.alpha == 0:
            raise OperatorError("alpha must be nonzero")
        if self.A - 4 * mpq(self.m) * self.B == 0:
            raise OperatorError("A - 4mB must be invertible")

    @classmethod
    def heat(cls, k, m, alpha: int = 1) -> "OpSpec":
        return cls(0, 1, k, alpha, m)

    @classmethod
    def top(cls, k, m, alpha: int = 1) -> "OpSpec":
        return cls(1, 0, k, alpha, m)

    @classmethod
    def serre(cls, k, m, alpha: int = 1) -> "OpSpec":
        return cls(1, 1, k, alpha, m)


def _partner_order(s: FourierSeries):
    """Order needed on a tau-only or regular factor multiplying s."""
    if s.order is None:
        raise OperatorError("operators act on truncated series")
    v = s.valuation()
    return (s.order - min(v, 0)).__ceil__() + 1


def apply_vartheta(s: FourierSeries, k) -> FourierSeries:
    """D_tau s + k G_2 s."""
    k = mpq(k)
    out = s.derive_q()
    if k:
        out = out + (eisenstein(2, _partner_order(s)) * s).scale(k)
    return out.truncate(s.order)


def gtilde_rescaled(k: int, alpha: int, order) -> FourierSeries:
    """G-tilde_k(alpha z) by substitution zeta -> zeta^alpha on the catalog series."""
    base = gtilde(k, order)
    if alpha == 1:
        return base
    return base.substitute(ZETA, mono(zeta=alpha))


def apply_M(s: FourierSeries, spec: OpSpec) -> FourierSeries:
    """M_{(A,B),k,alpha,m} applied to s."""
    A, B, m, alpha = spec.A, spec.B, mpq(spec.m), spec.alpha
    inv = scalar_inverse(A - 4 * m * B)
    order = _partner_order(s)
    out = apply_vartheta(s, spec.k)
    dz = s.derive(ZETA)
    bracket = FourierSeries.zero(s.order)
    if B != 0:
        g2 = eisenstein(2, order)
        bracket = bracket + (dz.derive(ZETA) + (g2 * s).scale(2 * m)).scale(B)
    if A != 0:
        g1a = gtilde_rescaled(1, alpha, order)
        g2a = gtilde_rescaled(2, alpha, order)
        inner = g1a * dz - (g2a * s).scale(2 * m / alpha)
        bracket = bracket + inner.scale(A * mpq(1, alpha))
    out = out + bracket.scale(inv)
    return out.truncate(s.order).reduce()


def apply_heat(s, k, m):
    return apply_M(s, OpSpec.heat(k, m))


def apply_top(s, k, m, alpha: int = 1):
    return apply_M(s, OpSpec.top(k, m, alpha))


def apply_serre(s, k, m, alpha: int = 1):
    return apply_M(s, OpSpec.serre(k, m, alpha))


def residue_cyclotomic_order(alpha: int, rho2=0, base: int = DEFAULT_ORDER) -> int:
    """Smallest multiple of ``base`` containing the phases exp(2 pi i mu r / alpha)."""
    need = abs(alpha) * mpq(rho2).denominator
    need = int(need)
    return lcm(base, need)


def residue_functional(phi, alpha: int, lam: int, mu: int, q_order, cyclotomic_order=None) -> FourierSeries:
    """sum (r + 2 m lam/alpha) c(n, r) exp(2 pi i mu r/alpha) q^(n + lam r/alpha), below q_order.

    Coefficients outside the stored table are recovered with the index-shift
    relation; a TruncationError names the first coefficient that cannot be.
    """
    if alpha == 0:
        raise OperatorError("alpha must be nonzero")
    q_order = mpq(q_order)
    m = phi.index
    order = cyclotomic_order or residue_cyclotomic_order(alpha, phi.rho[1])
    if order % (abs(alpha) * int(mpq(phi.rho[1]).denominator)):
        raise OperatorError(f"cyclotomic order {order} lacks the needed roots of unity")
    shift = 2 * m * lam / alpha
    discs = phi.discriminants()
    if not discs:
        return FourierSeries.zero(q_order)
    d_min = discs[0]
    # n + lam r/alpha = ((r + shift)^2 + D)/(4m) - m lam^2/alpha^2
    span = 4 * m * (q_order + m * lam * lam / (alpha * alpha)) - d_min
    if span < 0:
        return FourierSeries.zero(q_order)
    radius = int(span.__ceil__()) + 2
    r_lo = int((-shift).__floor__()) - radius
    r_hi = int((-shift).__ceil__()) + radius
    terms: dict = {}
    rho1, rho2 = phi.rho
    r = r_lo + rho2
    while r <= r_hi:
        weight = r + shift
        if weight != 0:
            # smallest admissible n: 4 m n - r^2 >= d_min
            n = rho1 + ((mpq(d_min) + r * r) / (4 * m) - rho1).__ceil__()
            while n + lam * r / alpha < q_order:
                try:
                    c = phi.coefficient(n, r, extend=True)
                except TruncationError as exc:
                    raise TruncationError(
                        f"residue below q^{q_order} needs {exc}"
                    ) from None
                if c != 0:
                    phase = root_of_unity(mpq(mu) * r / alpha, order) if mu else mpq(1)
                    e = n + lam * r / alpha
                    terms[e] = terms.get(e, 0) + weight * c * phase
                n += 1
        r += 1
    return FourierSeries({e: c for e, c in terms.items() if c != 0}, q_order)


__all__ = [
    "OpSpec",
    "OperatorError",
    "apply_M",
    "apply_heat",
    "apply_serre",
    "apply_top",
    "apply_vartheta",
    "gtilde_rescaled",
    "residue_cyclotomic_order",
    "residue_functional",
]
