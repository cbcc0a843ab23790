"""Binomial generators in normal form, exact coefficients and charts.

Exponent vectors are tuples indexed by variable position (variable ``i`` lives
at position ``i - 1``).  Entries are ints, or Fractions once rational
multiplicities enter the picture through weighted generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Union

try:  # exact rationals; gmpy2 is much faster than the pure Python Fraction
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction

RATIONAL_TYPES = (Fraction, type(Q(0)))
Number = Union[int, Fraction]
Exp = tuple

PROPER = "proper"
MONOMIAL = "monomial"
HYPERBOLIC = "hyperbolic"


class ZeroGenerator(ValueError):
    pass


@dataclass(frozen=True)
class Coefficient:
    """A field element: a rational for characteristic 0, a residue mod p otherwise."""

    value: Number
    p: int = 0

    def __post_init__(self):
        if self.p:
            v = self.value
            if isinstance(v, RATIONAL_TYPES):
                v = int(v.numerator) * pow(int(v.denominator), -1, self.p)
            object.__setattr__(self, "value", int(v) % self.p)
        else:
            object.__setattr__(self, "value", Q(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def _check(self, other: "Coefficient"):
        if other.p != self.p:
            raise ValueError("coefficients from different fields")

    def __add__(self, other: "Coefficient") -> "Coefficient":
        self._check(other)
        return Coefficient(self.value + other.value, self.p)

    def __sub__(self, other: "Coefficient") -> "Coefficient":
        return self + (-other)

    def __mul__(self, other: "Coefficient") -> "Coefficient":
        self._check(other)
        return Coefficient(self.value * other.value, self.p)

    def __truediv__(self, other: "Coefficient") -> "Coefficient":
        return self * other.inverse()

    def __neg__(self) -> "Coefficient":
        return Coefficient(-self.value, self.p)

    def __pow__(self, k: int) -> "Coefficient":
        if k < 0:
            return self.inverse() ** -k
        if self.p:
            return Coefficient(pow(self.value, k, self.p), self.p)
        return Coefficient(self.value**k)

    def inverse(self) -> "Coefficient":
        if self.is_zero():
            raise ZeroDivisionError("zero coefficient has no inverse")
        if self.p:
            return Coefficient(pow(self.value, -1, self.p), self.p)
        return Coefficient(1 / self.value)

    def __str__(self):
        return str(self.value)


def one(p: int = 0) -> Coefficient:
    return Coefficient(1, p)


def zeros(n: int) -> Exp:
    return (0,) * n


def add(u: Exp, v: Exp) -> Exp:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Exp, v: Exp) -> Exp:
    return tuple(a - b for a, b in zip(u, v))


def scale(u: Exp, k: Number) -> Exp:
    return tuple(_tidy(a * k) for a in u)


def _tidy(x: Number) -> Number:
    if isinstance(x, RATIONAL_TYPES) and x.denominator == 1:
        return int(x)
    return x


def degree(u: Exp, support: Iterable[int]) -> Number:
    """Sum of the entries of ``u`` at the given 1-based variable indices."""
    return sum(u[i - 1] for i in support)


def support(u: Exp) -> frozenset:
    return frozenset(i + 1 for i, a in enumerate(u) if a != 0)


@dataclass(frozen=True)
class Binomial:
    """One generator ``(x^nu * body)^weight``.

    body is ``y^gamma x^alpha - coeff * x^beta`` for proper generators,
    ``1 - coeff * z^delta`` for hyperbolic ones and ``1`` for monomials.
    """

    kind: str
    nu: Exp
    alpha: Exp
    beta: Exp
    gamma: Exp
    delta: Exp
    coeff: Coefficient | None
    weight: Fraction = Q(1)

    def __hash__(self):
        # generators are hashed constantly by the memo tables; keep it cheap
        try:
            return self._hash
        except AttributeError:
            h = hash((self.kind, self.nu, self.alpha, self.beta, self.gamma, self.delta, self.coeff, self.weight))
            object.__setattr__(self, "_hash", h)
            return h

    @property
    def n(self) -> int:
        return len(self.nu)

    def terms(self) -> list[tuple[Coefficient | None, Exp]]:
        """The (at most two) terms of ``x^nu * body`` as ``plus - minus``."""
        if self.kind == MONOMIAL:
            return [(None, self.nu)]
        if self.kind == HYPERBOLIC:
            return [(None, self.nu), (self.coeff, add(self.nu, self.delta))]
        return [(None, add(self.nu, add(self.alpha, self.gamma))), (self.coeff, add(self.nu, self.beta))]

    def with_nu(self, nu: Exp) -> "Binomial":
        nu = tuple(_tidy(a) for a in nu)
        return Binomial(self.kind, nu, self.alpha, self.beta, self.gamma, self.delta, self.coeff, self.weight)

    def with_weight(self, weight: Number) -> "Binomial":
        return replace(self, weight=Q(weight))

    def is_unit(self) -> bool:
        return self.kind == MONOMIAL and not any(self.nu)

    def __str__(self):
        return format_binomial(self)


def _mono(e: Exp, names=None) -> str:
    parts = []
    for i, a in enumerate(e):
        if a == 0:
            continue
        name = names[i] if names else f"x{i + 1}"
        parts.append(name if a == 1 else f"{name}^{a}")
    return "*".join(parts)


def format_binomial(f: Binomial) -> str:
    head = _mono(f.nu)
    if f.kind == MONOMIAL:
        body = head or "1"
    else:
        if f.kind == HYPERBOLIC:
            body = f"(1 - {f.coeff}*{_mono(f.delta) or '1'})"
        else:
            lhs = _mono(add(f.alpha, f.gamma))
            body = f"({lhs} - {f.coeff}*{_mono(f.beta)})"
        body = f"{head}*{body}" if head else body
    if f.weight != 1:
        body = f"[{body}]^({f.weight})"
    return body


def _x_part(e: Exp, invertible: frozenset) -> Exp:
    return tuple(0 if i + 1 in invertible else a for i, a in enumerate(e))


def _y_part(e: Exp, invertible: frozenset) -> Exp:
    return tuple(a if i + 1 in invertible else 0 for i, a in enumerate(e))


def normalize_binomial(
    plus_exp: Exp,
    minus_exp: Exp,
    plus_coeff: Coefficient,
    minus_coeff: Coefficient,
    invertible: Iterable[int] = (),
    weight: Number = 1,
) -> Binomial:
    """Normal form of ``plus_coeff*z^plus_exp - minus_coeff*z^minus_exp``.

    Units (nonzero constants and invertible-variable content) are dropped
    wherever they do not change the generated ideal.
    """
    inv = frozenset(invertible)
    n = len(plus_exp)
    if len(minus_exp) != n:
        raise ValueError("exponent vectors of different length")
    for e in (plus_exp, minus_exp):
        if any(a < 0 for a in _x_part(e, inv)):
            raise ValueError("negative exponent on a non-invertible variable")
    w = Q(weight)
    if w <= 0:
        raise ValueError("weight must be positive")
    pz, mz = plus_coeff.is_zero(), minus_coeff.is_zero()
    if pz and mz:
        raise ZeroGenerator("zero generator")
    if tuple(plus_exp) == tuple(minus_exp):
        if plus_coeff == minus_coeff:
            raise ZeroGenerator("zero generator")
        pz, mz = False, True
    if pz or mz:
        e = minus_exp if pz else plus_exp
        z = zeros(n)
        return Binomial(MONOMIAL, tuple(_tidy(a) for a in _x_part(e, inv)), z, z, z, z, None, w)

    low = tuple(min(a, b) for a, b in zip(plus_exp, minus_exp))
    nu = tuple(_tidy(a) for a in _x_part(low, inv))
    p = sub(plus_exp, low)
    m = sub(minus_exp, low)

    def key(e):
        x = _x_part(e, inv)
        return (sum(x), x, tuple(e))

    # the side with smaller x-degree becomes the alpha side; ties go lexicographic
    if key(p) <= key(m):
        a_exp, b_exp, a_c, b_c = p, m, plus_coeff, minus_coeff
    else:
        a_exp, b_exp, a_c, b_c = m, p, minus_coeff, plus_coeff
    b = b_c / a_c
    z = zeros(n)
    alpha = _x_part(a_exp, inv)
    beta = _x_part(b_exp, inv)
    gamma = sub(_y_part(a_exp, inv), _y_part(b_exp, inv))
    if not any(alpha):
        # y^gamma - b x^beta generates the same ideal as 1 - b y^-gamma x^beta
        delta = sub(beta, gamma)
        return Binomial(HYPERBOLIC, nu, z, z, z, tuple(_tidy(a) for a in delta), b, w)
    return Binomial(PROPER, nu, alpha, beta, gamma, z, b, w)


def renormalize(f: Binomial, invertible: Iterable[int], p: int = 0) -> Binomial:
    """Normalize the terms of ``f`` again (used after substitutions)."""
    ts = f.terms()
    if len(ts) == 1:
        z = zeros(f.n)
        return Binomial(MONOMIAL, _x_part(ts[0][1], frozenset(invertible)), z, z, z, z, None, f.weight)
    (_, e1), (c2, e2) = ts
    return normalize_binomial(e1, e2, one(c2.p), c2, invertible, f.weight)


def monomial(nu: Exp, weight: Number = 1) -> Binomial:
    z = zeros(len(nu))
    return Binomial(MONOMIAL, tuple(_tidy(a) for a in nu), z, z, z, z, None, Q(weight))


def canonical(f: Binomial) -> Binomial:
    """Fold the weight of a monomial into its exponents, for comparisons."""
    if f.kind == MONOMIAL and f.weight != 1:
        return monomial(scale(f.nu, f.weight))
    return f


def canonical_set(gens, units: bool = False) -> frozenset:
    """Comparison form of a generator set.

    With ``units`` set, hyperbolic bodies (units wherever the E-order is
    read) are dropped, leaving the monomial ``x^nu`` in their place.
    """
    if units:
        gens = [monomial(g.nu, g.weight) if g.kind == HYPERBOLIC else g for g in gens]
    return frozenset(canonical(g) for g in gens)


def reduced_set(gens) -> frozenset:
    """``canonical_set(gens, units=True)`` minus monomials that another
    monomial of the set divides; those never change an E-order."""
    full = canonical_set(gens, units=True)
    monos = [g for g in full if g.kind == MONOMIAL]

    def dominated(g):
        return any(h != g and all(a <= b for a, b in zip(h.nu, g.nu)) for h in monos)

    return frozenset(g for g in full if g.kind != MONOMIAL or not dominated(g))


class _One:
    """The unit ideal, returned when a coefficient ideal vanishes."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "ONE"

    def __reduce__(self):
        return (_One, ())


ONE = _One()


@dataclass(frozen=True)
class Chart:
    """One affine chart: variable roster, exceptional hypersurfaces, history.

    ``H`` holds ``(variable, birth_stage)`` pairs.  ``D`` holds one divisor per
    dimension (position ``i - 1`` for dimension ``i``), each a tuple of
    ``(variable, multiplicity)`` pairs.
    """

    n: int
    invertible: frozenset = frozenset()
    H: frozenset = frozenset()
    D: tuple = ()
    history: tuple = ()
    p: int = 0

    def __post_init__(self):
        if not self.D:
            object.__setattr__(self, "D", ((),) * self.n)
        bad = [v for v, _ in self.H if v in self.invertible]
        if bad:
            raise ValueError(f"exceptional hypersurface on invertible variable {bad[0]}")

    @property
    def xvars(self) -> tuple:
        return tuple(i for i in range(1, self.n + 1) if i not in self.invertible)

    def divisor(self, dim: int) -> dict:
        return dict(self.D[dim - 1])


def stratum(lam: Iterable[int], chart: Chart | None = None) -> frozenset:
    s = frozenset(lam)
    if chart is not None and s & chart.invertible:
        raise ValueError("stratum contains an invertible variable")
    return s


@dataclass(frozen=True)
class Problem:
    """A basic object to resolve: generators on a chart with a control."""

    chart: Chart
    generators: tuple
    c: int
    extra: dict = field(default_factory=dict, compare=False)
