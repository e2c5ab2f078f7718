"""Even lattices, short-vector counts and the E8 / A1 characters."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import floor, ceil, sqrt

from gmpy2 import mpq

from .seriescore import CoefFn, FourierSeries, mono


class LatticeError(ValueError):
    pass


E8_CARTAN = (
    (2, -1, 0, 0, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0, 0, 0),
    (0, -1, 2, -1, 0, 0, 0, -1),
    (0, 0, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, 0),
    (0, 0, -1, 0, 0, 0, 0, 2),
)


@dataclass(frozen=True)
class LatticeSpec:
    """Integral even Gram matrix and a norm-2 vector h (integer coordinates)."""

    gram: tuple
    h: tuple = field(default=None)

    def __post_init__(self):
        g = self.gram
        n = len(g)
        if any(len(row) != n for row in g):
            raise LatticeError("Gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise LatticeError("Gram matrix must be symmetric")
        if any(g[i][i] % 2 for i in range(n)):
            raise LatticeError("lattice must be even")
        _ldl(g)  # raises unless positive definite
        if self.h is not None:
            if len(self.h) != n:
                raise LatticeError("h has the wrong dimension")
            if self.pair(self.h, self.h) != 2:
                raise LatticeError("h must have norm 2")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def pair(self, a, b) -> int:
        g = self.gram
        return sum(a[i] * g[i][j] * b[j] for i in range(len(a)) for j in range(len(b)))


def e8_lattice(h_index: int = 0) -> LatticeSpec:
    h = [0] * 8
    h[h_index] = 1
    return LatticeSpec(E8_CARTAN, tuple(h))


def a1_lattice() -> LatticeSpec:
    return LatticeSpec(((2,),), (1,))


def _ldl(gram):
    """Exact LDL^T: returns (mu, d) with Q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2."""
    n = len(gram)
    a = [[mpq(gram[i][j]) for j in range(n)] for i in range(n)]
    mu = [[mpq(0)] * n for _ in range(n)]
    d = [mpq(0)] * n
    for i in range(n):
        d[i] = a[i][i]
        if d[i] <= 0:
            raise LatticeError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            mu[i][j] = a[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                a[j][k] -= mu[i][j] * mu[i][k] * d[i]
    return mu, d


def enumerate_vectors(gram, bound):
    """Yield (x, Q(x)) for all integer x with x^T G x <= bound (Fincke-Pohst)."""
    n = len(gram)
    mu, d = _ldl(gram)
    bound = mpq(bound)
    x = [0] * n
    df = [float(v) for v in d]
    muf = [[float(v) for v in row] for row in mu]

    def rec(i, remaining):
        if i < 0:
            yield tuple(x), bound - remaining
            return
        center = -sum(mu[i][j] * x[j] for j in range(i + 1, n))
        cf = -sum(muf[i][j] * x[j] for j in range(i + 1, n))
        rad = sqrt(max(float(remaining) / df[i], 0.0))
        lo = ceil(cf - rad - 1e-9) - 1
        hi = floor(cf + rad + 1e-9) + 1
        for xi in range(lo, hi + 1):
            t = xi - center
            used = d[i] * t * t
            if used <= remaining:
                x[i] = xi
                yield from rec(i - 1, remaining - used)
        x[i] = 0

    yield from rec(n - 1, bound)


def short_vectors(lattice: LatticeSpec, maxnorm) -> dict:
    """Counts N(norm, <h, v>) over all v with <v, v> <= maxnorm."""
    if maxnorm < 0:
        raise LatticeError("maxnorm must be nonnegative")
    if lattice.h is None:
        raise LatticeError("short_vectors needs a distinguished vector h")
    hg = [sum(lattice.h[i] * lattice.gram[i][j] for i in range(lattice.rank)) for j in range(lattice.rank)]
    counts: dict = {}
    for x, norm in enumerate_vectors(lattice.gram, maxnorm):
        r = sum(a * b for a, b in zip(hg, x))
        key = (int(norm), r)
        counts[key] = counts.get(key, 0) + 1
    return dict(sorted(counts.items()))


@lru_cache(maxsize=None)
def _projected_counts(gram: tuple, h_index: int, max_disc: int) -> dict:
    """c(D, r mod 2) = #{v : 4n - r^2 = D, <h,v> = r} for h a basis vector.

    With x_h solved from the pairing, v = (r/2) h + v_perp and 4n - r^2 equals
    2 |v_perp|^2, which depends only on the remaining coordinates.
    """
    n = len(gram)
    others = [i for i in range(n) if i != h_index]
    row = [gram[h_index][j] for j in others]
    # Schur complement: Gram of the projection onto h-perp
    perp = [
        [mpq(gram[a][b]) - mpq(gram[a][h_index] * gram[h_index][b], 2) for b in others]
        for a in others
    ]
    out: dict = {}
    for x, q in enumerate_vectors(perp, mpq(max_disc, 2)):
        disc = int(2 * q)
        parity = sum(c * xi for c, xi in zip(row, x)) % 2
        out[(disc, parity)] = out.get((disc, parity), 0) + 1
    return out


def theta_table(lattice: LatticeSpec, order: int) -> dict:
    """{(2n, r): N(2n, r)} for all n < order, via the h-projection."""
    if lattice.h is None or sorted(lattice.h) != [0] * (lattice.rank - 1) + [1]:
        return short_vectors(lattice, 2 * (order - 1)) if order > 0 else {}
    h_index = lattice.h.index(1)
    max_disc = 4 * (order - 1)
    proj = _projected_counts(lattice.gram, h_index, max_disc)
    table = {}
    for n in range(order):
        r = 0
        while r * r <= 4 * n:
            c = proj.get((4 * n - r * r, r % 2), 0)
            if c:
                table[(2 * n, r)] = c
                if r:
                    table[(2 * n, -r)] = c
            r += 1
    return dict(sorted(table.items()))


def discriminant_counts(lattice: LatticeSpec, max_disc: int) -> dict:
    """{(4n - r^2, r mod 2): count}; the data needed for reduced coefficient lookups."""
    if lattice.h is None or lattice.h.count(1) != 1 or any(c not in (0, 1) for c in lattice.h):
        raise LatticeError("discriminant counts need h to be a basis vector")
    return dict(sorted(_projected_counts(lattice.gram, lattice.h.index(1), max_disc).items()))


def lattice_theta(lattice: LatticeSpec, order) -> FourierSeries:
    """sum_v zeta^<h,v> q^(<v,v>/2) to q-order ``order``."""
    order_i = int(ceil(mpq(order)))
    terms: dict = {}
    for (norm2, r), c in theta_table(lattice, order_i).items():
        e = mpq(norm2, 2)
        terms.setdefault(e, {})[mono(zeta=r)] = mpq(c)
    return FourierSeries({e: CoefFn(t) for e, t in terms.items()}, order)


def a1_characters(order) -> tuple:
    """(Z_V, Z_M) of the level-one A1 lattice theory, even-charge convention.

    Z_V = sum zeta^(2n) q^(n^2) / eta and Z_M = sum zeta^(2n+1) q^((n+1/2)^2) / eta.
    """
    from .forms import eta

    order = mpq(order)
    shifted = order + mpq(1, 24)
    out = []
    for half in (0, 1):
        terms = {}
        n = 0
        while True:
            hit = False
            for j in {n, -n - half}:
                x = mpq(2 * j + half, 2)
                e = x * x
                if e < shifted:
                    hit = True
                    terms.setdefault(e, {})[mono(zeta=2 * x)] = mpq(1)
            if not hit:
                break
            n += 1
        theta = FourierSeries({e: CoefFn(t) for e, t in terms.items()}, shifted)
        out.append((theta / eta(shifted + mpq(1, 24))).truncate(order))
    return tuple(out)


__all__ = [
    "E8_CARTAN",
    "LatticeError",
    "LatticeSpec",
    "a1_characters",
    "a1_lattice",
    "discriminant_counts",
    "e8_lattice",
    "enumerate_vectors",
    "lattice_theta",
    "short_vectors",
    "theta_table",
]
