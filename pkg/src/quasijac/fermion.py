"""Free-fermion Fock algebra, kernel vectors of J[1], and fermionic n-point series.

Creation modes are stored as ``(label, charge, k)`` for psi_label^charge[-k]
with k >= 1 and charge in {+1, -1}.  A basis monomial is a word of such modes
applied to the vacuum, kept sorted by label, then charge (+ before -), then k.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, factorial, isqrt

from gmpy2 import mpq

from .forms import eta, f_r, gtilde, kn_form, ptilde_at_offset, theta1, theta_over_eta
from .seriescore import ZETA, CoefFn, FourierSeries, WJet, jet_from_series, mono
from .seriescore.cyclotomic import imaginary_unit, scalar_str


class FermionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Fock vectors


def _key(mode):
    r, charge, k = mode
    return (r, 0 if charge > 0 else 1, k)


def canonical_word(word) -> tuple:
    """(sign, sorted word), or (0, None) when a mode repeats."""
    word = list(word)
    if len(set(word)) != len(word):
        return 0, None
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(word)):
        j = i
        while j > 0 and _key(word[j - 1]) > _key(word[j]):
            word[j - 1], word[j] = word[j], word[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(word)


class FockVector:
    """Finite linear combination of canonical creation words on the vacuum."""

    __slots__ = ("terms", "rank")

    def __init__(self, terms: dict | None = None, rank: int = 1):
        if rank < 1:
            raise FermionError("rank must be at least 1")
        self.rank = rank
        clean: dict = {}
        for word, c in (terms or {}).items():
            for r, charge, k in word:
                if not 1 <= r <= rank or charge not in (1, -1) or k < 1:
                    raise FermionError(f"invalid creation mode {(r, charge, k)} at rank {rank}")
            sign, w = canonical_word(word)
            if sign == 0:
                continue
            clean[w] = clean.get(w, 0) + sign * c
        self.terms = {w: c for w, c in clean.items() if c != 0}

    @classmethod
    def vacuum(cls, rank: int = 1) -> "FockVector":
        return cls({(): mpq(1)}, rank)

    @classmethod
    def word(cls, modes, rank: int = 1, c=1) -> "FockVector":
        return cls({tuple(modes): mpq(c) if isinstance(c, int) else c}, rank)

    def _check(self, other: "FockVector"):
        if not isinstance(other, FockVector):
            raise TypeError("expected a FockVector")
        if other.rank != self.rank:
            raise FermionError("rank mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return FockVector(out, self.rank)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "FockVector":
        return FockVector({w: c * v for w, v in self.terms.items()}, self.rank)

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.rank == other.rank and (self - other).is_zero()

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def weights(self) -> set:
        return {word_weight(w) for w in self.terms}

    def charges(self) -> set:
        return {word_charge(w) for w in self.terms}

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "terms": [
                [[list(m) for m in w], scalar_str(self.terms[w])] for w in sorted(self.terms, key=_word_key)
            ],
        }

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=_word_key):
            modes = "".join(f"psi{r}{'+' if s > 0 else '-'}[-{k}]" for r, s, k in w)
            parts.append(f"({scalar_str(self.terms[w])}){modes or '1'}")
        return " + ".join(parts) + " vac"


def _word_key(w):
    return [_key(m) for m in w]


def word_weight(word) -> mpq:
    """L[0]-weight sum(k - 1/2)."""
    return sum((mpq(k) - mpq(1, 2) for _, _, k in word), mpq(0))


def word_charge(word) -> int:
    return sum(charge for _, charge, _ in word)


def charge_conjugate(v: FockVector) -> FockVector:
    """Swap psi^+ and psi^- on every mode."""
    return FockVector({tuple((r, -s, k) for r, s, k in w): c for w, c in v.terms.items()}, v.rank)


# ---------------------------------------------------------------------------
# Modes


@dataclass(frozen=True)
class Mode:
    """psi_label^charge[n] (kind "psi") or J[n] (kind "J")."""

    kind: str
    n: int
    label: int = 0
    charge: int = 0

    def __post_init__(self):
        if self.kind not in ("psi", "J"):
            raise FermionError(f"unknown mode kind {self.kind!r}")
        if self.kind == "psi" and (self.label < 1 or self.charge not in (1, -1)):
            raise FermionError("psi modes need a label >= 1 and charge +1 or -1")


def psi(label: int, charge: int, n: int) -> Mode:
    return Mode("psi", n, label, charge)


def current(n: int) -> Mode:
    return Mode("J", n)


def _create(v: FockVector, mode) -> FockVector:
    return FockVector({(mode,) + w: c for w, c in v.terms.items()}, v.rank)


def _apply_psi(v: FockVector, label: int, charge: int, n: int) -> FockVector:
    if label > v.rank:
        raise FermionError(f"label {label} exceeds rank {v.rank}")
    if n <= -1:
        return _create(v, (label, charge, -n))
    # annihilator: anticommute through the word, {psi^s[n], psi^-s[-k]} = delta_{n, k-1}
    target = (label, -charge, n + 1)
    out: dict = {}
    for w, c in v.terms.items():
        for j, m in enumerate(w):
            if m == target:
                rest = w[:j] + w[j + 1:]
                out[rest] = out.get(rest, 0) + (-1) ** j * c
    return FockVector(out, v.rank)


def _current_on_vacuum(n: int, rank: int) -> FockVector:
    """J[n]vac = sum_r sum_{i=n}^{-1} psi_r^+[i] psi_r^-[n-1-i] vac (zero for n >= 0)."""
    out: dict = {}
    for r in range(1, rank + 1):
        for i in range(n, 0):
            out[((r, 1, -i), (r, -1, i - n + 1))] = mpq(1)
    return FockVector(out, rank)


def _apply_current(v: FockVector, n: int) -> FockVector:
    acc = FockVector({}, v.rank)
    vac_part = _current_on_vacuum(n, v.rank)
    for w, c in v.terms.items():
        # [J[n], psi^s[-k]] = s psi^s[n-k]
        for j, (r, s, k) in enumerate(w):
            tail = FockVector({w[j + 1:]: c * s}, v.rank)
            piece = _apply_psi(tail, r, s, n - k)
            for m in reversed(w[:j]):
                piece = _create(piece, m)
            acc = acc + piece
        if vac_part.terms:
            piece = vac_part.scale(c)
            for m in reversed(w):
                piece = _create(piece, m)
            acc = acc + piece
    return acc


def apply_mode(v: FockVector, mode: Mode) -> FockVector:
    if mode.kind == "psi":
        return _apply_psi(v, mode.label, mode.charge, mode.n)
    return _apply_current(v, mode.n)


# ---------------------------------------------------------------------------
# Partitions and the beta / Phi / Psi vectors


@dataclass(frozen=True)
class PartitionSpec:
    """pi = 1^{j_1} ... n^{j_n}, stored as parts in decreasing order."""

    parts: tuple

    def __post_init__(self):
        if any(not isinstance(p, int) or p < 1 for p in self.parts):
            raise FermionError(f"partition parts must be positive integers: {self.parts}")
        object.__setattr__(self, "parts", tuple(sorted(self.parts, reverse=True)))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def multiplicity(self, k: int) -> int:
        return self.parts.count(k)

    def check_rank(self, rank: int):
        if self.length > rank:
            raise FermionError(f"partition {self.parts} has more than {rank} parts")

    def lowered(self, k: int) -> "PartitionSpec":
        """Replace one part k by k - 1 (dropping it when k = 1)."""
        parts = list(self.parts)
        parts.remove(k)
        if k > 1:
            parts.append(k - 1)
        return PartitionSpec(tuple(parts))

    def __str__(self):
        if not self.parts:
            return "()"
        return " ".join(f"{k}^{self.multiplicity(k)}" for k in sorted(set(self.parts)))


def partitions(n: int, largest: int | None = None):
    """All partitions of n as decreasing tuples."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def b_word(label: int, k: int) -> tuple:
    """b_r^k = psi_r^+[-k] psi_r^-[-1]."""
    return ((label, 1, k), (label, -1, 1))


def build_beta(parts, rank: int) -> FockVector:
    """beta^n_pi: sum over ways to place the parts of pi on distinct labels 1..rank."""
    pi = parts if isinstance(parts, PartitionSpec) else PartitionSpec(tuple(parts))
    pi.check_rank(rank)
    distinct = sorted(set(pi.parts))
    out: dict = {}

    def place(idx, free, chosen):
        if idx == len(distinct):
            word = []
            for label in sorted(chosen):
                word.extend(b_word(label, chosen[label]))
            out[tuple(word)] = mpq(1)
            return
        k = distinct[idx]
        for labels in combinations(sorted(free), pi.multiplicity(k)):
            nxt = dict(chosen)
            for r in labels:
                nxt[r] = k
            place(idx + 1, free - set(labels), nxt)

    place(0, set(range(1, rank + 1)), {})
    return FockVector(out, rank)


def build_phi(R: int) -> FockVector:
    """sum over partitions pi of R of (-1)^(m+1) / (m binom(R, m)) beta^R_pi."""
    if R < 1:
        raise FermionError("Phi^R needs R >= 1")
    acc = FockVector({}, R)
    for parts in partitions(R):
        m = len(parts)
        acc = acc + build_beta(parts, R).scale(mpq((-1) ** (m + 1), m * comb(R, m)))
    return acc


def build_psi(R: int) -> FockVector:
    if R < 2:
        raise FermionError("Psi^R needs R >= 2")
    acc = build_beta((1,) * R, R).scale(R - 1)
    for k in range(2, R + 1):
        acc = acc + build_beta((k,) + (1,) * (R - k), R).scale((-1) ** (k + 1) * factorial(k - 1))
    return acc.scale(mpq((-1) ** R, factorial(R)))


def j1_kernel_check(v: FockVector) -> bool:
    return apply_mode(v, current(1)).is_zero()


def j1_recursion(parts, rank: int) -> FockVector:
    """Right-hand side sum_k (j_{k-1} + 1) chi(j_k) beta^{R-1}_{pi_k}, with j_0 = rank - m."""
    pi = parts if isinstance(parts, PartitionSpec) else PartitionSpec(tuple(parts))
    acc = FockVector({}, rank)
    for k in sorted(set(pi.parts)):
        below = rank - pi.length if k == 1 else pi.multiplicity(k - 1)
        acc = acc + build_beta(pi.lowered(k), rank).scale(below + 1)
    return acc


def j1_recursion_witness(parts, rank: int):
    """None when J[1] beta^R_pi matches the recursion, else the difference."""
    lhs = apply_mode(build_beta(parts, rank), current(1))
    diff = lhs - j1_recursion(parts, rank)
    return None if diff.is_zero() else diff.to_dict()


# ---------------------------------------------------------------------------
# One-point functions


# sign attached to Z(b_{r_1}^{k_1} ... b_{r_m}^{k_m} vac) (eta/theta_1)^R / prod G-tilde_{k_nu}
ZBETA_READINGS = {
    "per-factor": lambda m: (-1) ** m,
    "printed": lambda m: 1,
    "overall": lambda m: (-1) ** (m + 1),
}
PINNED_READING = "per-factor"


@lru_cache(maxsize=None)
def _gtilde_product(parts: tuple, order) -> FourierSeries:
    if not parts:
        return FourierSeries.const(1, order)
    head = gtilde(parts[0], order)
    return (head * _gtilde_product(parts[1:], order)).truncate(order)


def multinomial(total: int, counts) -> int:
    out = factorial(total)
    for c in counts:
        out //= factorial(c)
    return out


def z_beta_ratio(parts, R: int, order, reading: str = PINNED_READING) -> FourierSeries:
    """Z(beta^R_pi) (eta/theta_1)^R under the chosen sign reading."""
    pi = parts if isinstance(parts, PartitionSpec) else PartitionSpec(tuple(parts))
    pi.check_rank(R)
    counts = [R - pi.length] + [pi.multiplicity(k) for k in sorted(set(pi.parts))]
    weight = multinomial(R, counts) * ZBETA_READINGS[reading](pi.length)
    return _gtilde_product(pi.parts, mpq(order)).scale(weight)


def z_beta(parts, R: int, order, reading: str = PINNED_READING) -> FourierSeries:
    return (z_beta_ratio(parts, R, order, reading) * theta_over_eta(order, R)).truncate(order)


def z_ratio(v: FockVector, order, reading: str = PINNED_READING) -> FourierSeries:
    """Z(v) (eta/theta_1)^R for v a combination of b-monomials."""
    order = mpq(order)
    acc = FourierSeries.zero(order)
    for w, c in v.terms.items():
        if len(w) % 2:
            raise FermionError("vector is not a combination of b-monomials")
        parts = []
        for i in range(0, len(w), 2):
            (r1, s1, k), (r2, s2, one) = w[i], w[i + 1]
            if r1 != r2 or s1 != 1 or s2 != -1 or one != 1:
                raise FermionError(f"word {w} is not a product of b operators")
            parts.append(k)
        parts = tuple(sorted(parts, reverse=True))
        sign = ZBETA_READINGS[reading](len(parts))
        acc = acc + _gtilde_product(parts, order).scale(c * sign)
    return acc


def z_vector(v: FockVector, order, reading: str = PINNED_READING) -> FourierSeries:
    return (z_ratio(v, order, reading) * theta_over_eta(order, v.rank)).truncate(order)


def zphi_witness(R: int, order, reading: str = PINNED_READING):
    """First difference between Z(Phi^R) and F_R (theta_1/eta)^R."""
    lhs = z_vector(build_phi(R), order, reading)
    rhs = (f_r(R, order) * theta_over_eta(order, R)).truncate(order)
    return lhs.first_difference(rhs)


def zpsi_witness(R: int, order, reading: str = PINNED_READING):
    lhs = z_vector(build_psi(R), order, reading)
    rhs = (kn_form(R, order) * theta_over_eta(order, R)).truncate(order)
    return lhs.first_difference(rhs)


def generating_witness(degree: int, order):
    """Compare sum_R F_R x^R with Log(1 - sum_k G-tilde_k x^k) up to x^degree."""
    inner = {0: FourierSeries.const(1, order)}
    for k in range(1, degree + 1):
        inner[k] = gtilde(k, order).scale(-1)
    log = WJet(inner, degree + 1).log()
    expected = WJet({R: f_r(R, order) for R in range(1, degree + 1)}, degree + 1)
    return log.first_difference(expected)


# ---------------------------------------------------------------------------
# n-point functions


def _check_offset(d):
    d = mpq(d)
    if not 0 < d < 1:
        raise FermionError(f"offset {d} lies outside the band 0 < a - b < 1")
    return d


def _determinant(matrix):
    n = len(matrix)
    acc = None
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = None
        for i in range(n):
            term = matrix[i][perm[i]] if term is None else term * matrix[i][perm[i]]
        term = term.scale(-1) if inversions % 2 else term
        acc = term if acc is None else acc + term
    return acc


def ptilde_matrix(a, b, order, qz_shift=0):
    if len(a) != len(b) or not 1 <= len(a) <= 3:
        raise FermionError("need 1 <= n <= 3 matching offsets a_j and b_k")
    return [
        [ptilde_at_offset(1, _check_offset(mpq(x) - mpq(y)), order, qz_shift) for y in b]
        for x in a
    ]


def shifted_theta_over_eta(order, qz_shift: int = 0) -> FourierSeries:
    """theta_1(z + s tau)/eta, via the substitution zeta -> zeta q^s."""
    order = mpq(order)
    if qz_shift == 0:
        return theta_over_eta(order)
    s = mpq(qz_shift)
    # theta_1 terms r^2/8 ... ; the shift lowers exponents by up to s^2/2
    extra = s * s / 2 + abs(s) + 2
    t = theta1(order + extra).substitute(ZETA, qshift=s, support=(mpq(1, 2), 0))
    return (t / eta(order + extra + 1)).truncate(order)


def det_npoint(a, b, order, qz_shift: int = 0) -> FourierSeries:
    """det(P-tilde_1((a_j - b_k) tau, z + s tau, tau)) theta_1(z + s tau)/eta."""
    order = mpq(order)
    det = _determinant(ptilde_matrix(a, b, order + 1, qz_shift))
    return (det * shifted_theta_over_eta(order + 1, qz_shift)).truncate(order)


def det_pole_orders(a, b, order, jet_order: int = 3, qz_shift: int = 0) -> dict:
    """Pole orders at zeta = 1 of the determinant and of determinant * theta_1/eta."""
    order = mpq(order)
    entries = ptilde_matrix(a, b, order, qz_shift)
    jets = [[jet_from_series(e, ZETA, jet_order + len(a)) for e in row] for row in entries]
    det_jet = _determinant(jets)
    theta_jet = jet_from_series(shifted_theta_over_eta(order, qz_shift), ZETA, jet_order + len(a))
    full = det_jet * theta_jet
    return {"det": det_jet.pole_order(), "with_theta": full.pole_order()}


# ---------------------------------------------------------------------------
# Trace oracle for the rank-one two-point function


class OracleError(FermionError):
    pass


def required_cutoff(offset, order) -> int:
    """Smallest cutoff E with (E + 1)(1 - offset) + 1/12 >= order."""
    d = _check_offset(offset)
    e = 0
    while (e + 1) * (1 - d) + mpq(1, 12) < mpq(order):
        e += 1
    return e


def _distinct_parts(limit: int, smallest: int, cost):
    """Sets of distinct integers >= smallest with sum of cost(k) <= limit."""
    yield ()
    k = smallest
    while cost(k) <= limit:
        for rest in _distinct_parts(limit - cost(k), k + 1, cost):
            yield (k,) + rest
        k += 1


def fock_states(cutoff: int):
    """(plus, minus) occupation sets for rank one with shifted weight <= cutoff.

    psi^+[-k] carries shifted weight k, psi^-[-k] carries k - 1.
    """
    for plus in _distinct_parts(cutoff, 1, lambda k: k):
        used = sum(plus)
        for minus in _distinct_parts(cutoff - used, 1, lambda k: k - 1):
            yield plus, minus


def two_point_oracle(offset, order, weight_cutoff: int | None = None) -> FourierSeries:
    """-STr Y(psi^-, y) Y(psi^+, x) zeta^J(0) q^L(0) by enumerating Fock states.

    The diagonal part of the operator product on a state with occupations
    (P, M) is sum_{k in P} q^(k d) - sum_{k in M} q^(-(k-1) d) - q^d/(1 - q^d)
    with d = offset.  Each state carries -zeta q^k per psi^+[-k] and
    -zeta^-1 q^(k-1) per psi^-[-k], with the prefactor i zeta^(1/2) q^(1/12).
    """
    d = _check_offset(offset)
    order = mpq(order)
    need = required_cutoff(d, order)
    if weight_cutoff is None:
        weight_cutoff = need
    if weight_cutoff < need:
        raise OracleError(f"weight cutoff {weight_cutoff} too small: need at least {need} for q-order {order}")
    base: dict = {}
    diag: dict = {}

    def add(table, e, zexp, c):
        if e < order:
            slot = table.setdefault(e, {})
            key = mono(zeta=zexp)
            slot[key] = slot.get(key, 0) + c

    for plus, minus in fock_states(weight_cutoff):
        level = sum(plus) + sum(k - 1 for k in minus)
        sign = (-1) ** (len(plus) + len(minus))
        e0 = level + mpq(1, 12)
        z = len(plus) - len(minus) + mpq(1, 2)
        add(base, e0, z, mpq(sign))
        for k in plus:
            add(diag, e0 + k * d, z, mpq(sign))
        for k in minus:
            add(diag, e0 - (k - 1) * d, z, mpq(-sign))
    to_series = lambda t: FourierSeries({e: CoefFn(v) for e, v in t.items()}, order)
    constant = FourierSeries.monomial(d, c=-1, order=order) * FourierSeries(
        {j * d: CoefFn.const(1) for j in range(int(order / d) + 1)}, order
    )
    total = to_series(diag) + (constant * to_series(base)).truncate(order)
    return total.scale(imaginary_unit()).truncate(order)


def degree_one_residual(order):
    """(D_z + G-tilde_1) theta_1/eta, expected to vanish."""
    t = theta_over_eta(order)
    return (t.derive(ZETA) + gtilde(1, order + 1) * t).truncate(order)


def theta_zero_witness(lam: int, mu: int, order) -> dict:
    """Nonzero q-coefficients below ``order`` of theta_1(lam tau + mu).

    With zeta = q^lam e^(2 pi i mu) each term i (-1)^n q^(r^2/2) zeta^r, r = n + 1/2,
    becomes a pure power of q; the finitely many r reaching below ``order`` are
    summed directly.
    """
    order = mpq(order)
    acc: dict = {}
    # (r + lam)^2/2 - lam^2/2 < order bounds |r + lam|
    reach = isqrt(int((2 * order).__ceil__()) + lam * lam) + 2
    for n in range(-lam - reach, -lam + reach + 1):
        r = mpq(2 * n + 1, 2)
        e = r * r / 2 + lam * r
        if e < order:
            phase = (-1) ** int(2 * mu * r) if mu else 1
            acc[e] = acc.get(e, 0) + (-1) ** (n % 2) * phase
    return {e: v for e, v in acc.items() if v != 0}


__all__ = [
    "FermionError",
    "FockVector",
    "Mode",
    "OracleError",
    "PINNED_READING",
    "PartitionSpec",
    "ZBETA_READINGS",
    "apply_mode",
    "b_word",
    "build_beta",
    "build_phi",
    "build_psi",
    "canonical_word",
    "charge_conjugate",
    "current",
    "degree_one_residual",
    "det_npoint",
    "det_pole_orders",
    "fock_states",
    "generating_witness",
    "j1_kernel_check",
    "j1_recursion",
    "j1_recursion_witness",
    "multinomial",
    "partitions",
    "psi",
    "ptilde_matrix",
    "required_cutoff",
    "shifted_theta_over_eta",
    "theta_zero_witness",
    "two_point_oracle",
    "word_charge",
    "word_weight",
    "z_beta",
    "z_beta_ratio",
    "z_ratio",
    "z_vector",
    "zphi_witness",
    "zpsi_witness",
]
