"""Brute-force cross-checks for the exponent arithmetic.

Everything here expands generators into dense polynomials and reads orders
off monomial by monomial.  Slow on purpose; only meant for small inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    HYPERBOLIC,
    MONOMIAL,
    Binomial,
    Coefficient,
    Q,
    ZeroGenerator,
    monomial,
    normalize_binomial,
    one,
)

# coordinates of the test point off the stratum: distinct primes, one per position
_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class OracleOutOfRange(ValueError):
    pass


@dataclass
class DensePolynomial:
    """Exponent vector -> nonzero Coefficient.  Exponents of invertible
    variables may be negative (Laurent in those)."""

    n: int
    p: int = 0
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {tuple(e): c for e, c in self.terms.items() if not c.is_zero()}

    @classmethod
    def from_terms(cls, n, p, pairs) -> "DensePolynomial":
        acc = {}
        for e, c in pairs:
            e = tuple(e)
            acc[e] = acc[e] + c if e in acc else c
        return cls(n, p, acc)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "DensePolynomial") -> "DensePolynomial":
        return DensePolynomial.from_terms(self.n, self.p, list(self.terms.items()) + list(other.terms.items()))

    def __mul__(self, other: "DensePolynomial") -> "DensePolynomial":
        pairs = []
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                pairs.append((tuple(a + b for a, b in zip(e1, e2)), c1 * c2))
        return DensePolynomial.from_terms(self.n, self.p, pairs)

    def power(self, k: int) -> "DensePolynomial":
        out = DensePolynomial(self.n, self.p, {(0,) * self.n: one(self.p)})
        for _ in range(k):
            out = out * self
        return out

    def substitute(self, values: dict) -> "DensePolynomial":
        """Replace variable ``i`` by the constant ``values[i]`` wherever it occurs."""
        pairs = []
        for e, c in self.terms.items():
            e = list(e)
            for i, v in values.items():
                c = c * Coefficient(v, self.p) ** e[i - 1]
                e[i - 1] = 0
            pairs.append((tuple(e), c))
        return DensePolynomial.from_terms(self.n, self.p, pairs)

    def min_degree(self, lam) -> int | None:
        """Smallest total degree in the variables of ``lam``; None for zero."""
        if self.is_zero():
            return None
        return min(sum(e[i - 1] for i in lam) for e in self.terms)

    def max_entry(self) -> int:
        return max((abs(a) for e in self.terms for a in e), default=0)


def _coeff(x, p) -> Coefficient:
    return x if isinstance(x, Coefficient) else Coefficient(x, p)


def _p_of(f: Binomial) -> int:
    return f.coeff.p if f.coeff is not None else 0


def expand(f: Binomial, p: int | None = None) -> DensePolynomial:
    """``x^nu * body`` as a dense polynomial (the weight is ignored)."""
    p = _p_of(f) if p is None else p
    n = f.n
    nu = list(f.nu)
    if f.kind == MONOMIAL:
        return DensePolynomial(n, p, {tuple(nu): one(p)})
    if f.kind == HYPERBOLIC:
        first = tuple(nu)
        second = tuple(a + d for a, d in zip(nu, f.delta))
    else:
        first = tuple(a + b + g for a, b, g in zip(nu, f.alpha, f.gamma))
        second = tuple(a + b for a, b in zip(nu, f.beta))
    return DensePolynomial.from_terms(n, p, [(first, one(p)), (second, -_coeff(f.coeff, p))])


def _point_values(n: int, p: int, lam) -> dict:
    """Nonzero coordinates for the variables off ``lam``: small primes,
    replaced by 1 when the characteristic kills them."""
    return {
        i: (_PRIMES[i - 1] if _PRIMES[i - 1] % p else 1) if p else _PRIMES[i - 1]
        for i in range(1, n + 1)
        if i not in lam
    }


def _shift(poly: DensePolynomial, values: dict) -> DensePolynomial:
    """Taylor expansion at the point ``x_i = values[i]``: ``x_i -> v_i + x_i``.
    Negative exponents (on units) are cleared first by a monomial factor,
    which is a unit at the point and leaves the order alone."""
    n, p = poly.n, poly.p
    low = [min(0, min(e[i] for e in poly.terms)) for i in range(n)]
    out = DensePolynomial(n, p, {})
    for e, c in poly.terms.items():
        term = DensePolynomial(n, p, {(0,) * n: c})
        for i in range(n):
            k = e[i] - low[i]
            if i + 1 in values and k:
                unit = (0,) * i + (1,) + (0,) * (n - i - 1)
                lin = DensePolynomial.from_terms(n, p, [((0,) * n, Coefficient(values[i + 1], p)), (unit, one(p))])
                term = term * lin.power(k)
            elif k:
                term = term * DensePolynomial(n, p, {(0,) * i + (k,) + (0,) * (n - i - 1): one(p)})
        out = out + term
    return out


def ord_at_stratum_oracle(f: Binomial, lam, bound: int, invertible=()):
    """Order of ``f`` at one concrete point of the stratum ``lam``.

    The coordinates off ``lam`` (units included) take fixed nonzero values
    and the polynomial is expanded there.  Order is multiplicative, so the
    weight just scales the order of the base.  A polynomial vanishing
    identically near the point has infinite order.
    """
    lam = frozenset(lam)
    base = expand(f)
    if base.max_entry() > bound:
        raise OracleOutOfRange("oracle out of range")
    shifted = _shift(base, _point_values(base.n, base.p, lam))
    if shifted.is_zero():
        return float("inf")
    return Q(f.weight) * min(sum(e) for e in shifted.terms)


def eord_membership_oracle(J, lam, m: int, invertible=()) -> bool:
    """Whether every generator of ``J`` lies in ``<x_i : i in lam>^m``.

    Units are left symbolic, so a polynomial lies in the ideal exactly when
    each of its terms does.  Integral weights are expanded as real powers.
    """
    lam = frozenset(lam)
    for f in J:
        poly = expand(f)
        w = Q(f.weight)
        if w.denominator == 1:
            poly = poly.power(int(w))
            if poly.min_degree(lam) < m:
                return False
        # fractional weight: membership of f^w means w * (order of f) >= m
        elif w * poly.min_degree(lam) < m:
            return False
    return True


def membership_order(J, lam, bound: int, invertible=()) -> int:
    """Largest ``m <= bound`` passing the membership test."""
    m = 0
    while m < bound and eord_membership_oracle(J, lam, m + 1, invertible):
        m += 1
    return m


def taylor_coeff_oracle(f: Binomial, j: int) -> list:
    """Taylor coefficients of ``x^nu * body`` in ``x_j``, highest power first.

    Each entry is ``(power, DensePolynomial)`` with ``x_j`` removed.
    """
    poly = expand(f)
    groups = {}
    for e, c in poly.terms.items():
        k = e[j - 1]
        rest = e[: j - 1] + (0,) + e[j:]
        groups.setdefault(k, []).append((rest, c))
    return [(k, DensePolynomial.from_terms(f.n, poly.p, groups[k])) for k in sorted(groups, reverse=True)]


def to_generator(poly: DensePolynomial, invertible=(), weight=1) -> Binomial:
    """Normal-form generator for a one or two term polynomial."""
    items = sorted(poly.terms.items())
    if not items or len(items) > 2:
        raise ValueError("expected one or two terms")
    if len(items) == 1:
        e, _ = items[0]
        inv = frozenset(invertible)
        return monomial(tuple(0 if i + 1 in inv else a for i, a in enumerate(e)), weight)
    (e1, c1), (e2, c2) = items
    return normalize_binomial(e1, e2, c1, -c2, invertible, weight)


def ecoeff_oracle(P, c, j: int, invertible=()) -> tuple:
    """Coefficient ideal along ``x_j = 0`` assembled from Taylor coefficients.

    A coefficient of ``x_j^k`` in a generator of weight ``w`` enters with
    weight ``w * c / (c - w * k)`` when ``w * k < c``.  Hyperbolic bodies are
    units at every E-singular point, so only ``x^nu`` is expanded for them.
    """
    c = Q(c)
    out = []
    for f in P:
        w = Q(f.weight)
        base = monomial(f.nu) if f.kind == HYPERBOLIC else f.with_weight(1)
        for k, coeff in taylor_coeff_oracle(base, j):
            a = w * k
            if a >= c:
                continue
            try:
                g = to_generator(coeff, invertible, w * c / (c - a))
            except ZeroGenerator:
                continue
            out.append(g)
    return tuple(dict.fromkeys(out))
