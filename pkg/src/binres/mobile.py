"""Descent to lower dimension: monomial part, companion, coefficient and junior ideals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Q, HYPERBOLIC, MONOMIAL, ONE, Binomial, Chart, degree, monomial, sub
from .eorder import eord_generator, eord_ideal


class BookkeepingViolation(RuntimeError):
    pass


class MonomialCaseMisrouted(ValueError):
    pass


class NoMaximalContact(RuntimeError):
    pass


@dataclass(frozen=True)
class DimensionState:
    dim_index: int
    M: dict
    I: tuple
    P: tuple | None
    c_next: Fraction
    theta: Fraction
    contact_var: int | None = None
    D: dict | None = None  # the full divisor M was cut from


def divisor_vector(D: dict, n: int) -> tuple:
    return tuple(Q(D.get(i, 0)) for i in range(1, n + 1))


def factor_monomial_part(J, D: dict) -> tuple:
    """Split ``J = x^D * I``; each generator of weight w loses ``D / w`` from nu."""
    if J is ONE:
        return dict(D), ONE
    if not any(D.values()):
        return {}, tuple(J)
    out = []
    for f in J:
        d = divisor_vector(D, f.n)
        nu = sub(f.nu, tuple(a / f.weight for a in d))
        if any(a < 0 for a in nu):
            raise BookkeepingViolation(f"bookkeeping violation: {f} is not divisible by {D}")
        out.append(f.with_nu(nu))
    return {k: v for k, v in D.items() if v}, tuple(out)


def companion(I, M: dict, theta, c_next) -> tuple:
    theta, c_next = Q(theta), Q(c_next)
    if theta <= 0:
        raise MonomialCaseMisrouted("monomial case misrouted")
    if theta >= c_next:
        return tuple(I)
    n = I[0].n
    return tuple(I) + (monomial(divisor_vector(M, n), theta / (c_next - theta)),)


def is_bold_regular(P) -> bool:
    if P is ONE or len(P) != 1:
        return False
    f = P[0]
    if f.kind not in (MONOMIAL, HYPERBOLIC):
        return False
    return sum(1 for a in f.nu if a) == 1


def contact_candidates(f: Binomial, lam) -> set:
    """Variables of ``lam`` whose hyperplane holds the E-singular locus of ``f``
    at its E-order on ``lam``: those dividing the common factor or the term of
    lowest degree along ``lam``."""
    cand = {i for i in lam if f.nu[i - 1] > 0}
    if f.kind not in (MONOMIAL, HYPERBOLIC):
        da, db = degree(f.alpha, lam), degree(f.beta, lam)
        if da <= db:
            cand |= {i for i in lam if f.alpha[i - 1] > 0}
        if db <= da:
            cand |= {i for i in lam if f.beta[i - 1] > 0}
    return cand


def select_max_contact(P, chart: Chart | None, permissible, lam, prefer: int | None = None) -> int:
    """Smallest qualifying variable, drawn from ``permissible`` when possible.

    ``prefer`` (the strict transform of an earlier choice) wins whenever it
    still qualifies.
    """
    c = eord_ideal(P, lam)
    cand = set()
    for f in P:
        if eord_generator(f, lam) == c:
            cand |= contact_candidates(f, lam)
    if chart is not None:
        cand -= chart.invertible
    if not cand:
        raise NoMaximalContact("no maximal contact")
    if prefer in cand:
        return prefer
    preferred = cand & set(permissible or ())
    return min(preferred or cand)


def _drop(e: tuple, j: int) -> tuple:
    return e[: j - 1] + (0,) + e[j:]


def ecoeff_generator(f: Binomial, c, j: int) -> list:
    c = Q(c)
    w = f.weight
    if f.kind in (MONOMIAL, HYPERBOLIC):
        a = w * f.nu[j - 1]
        if a == 0:
            return [f if f.kind == MONOMIAL else monomial(f.nu, w)]
        if a >= c:
            return []
        return [monomial(_drop(f.nu, j), w * c / (c - a))]
    a = w * (f.nu[j - 1] + f.alpha[j - 1])
    b = w * (f.nu[j - 1] + f.beta[j - 1])
    if a == b:
        if a == 0:
            return [f]
        if a >= c:
            return []
        return [f.with_nu(_drop(f.nu, j)).with_weight(w * c / (c - a))]
    out = []
    if a < c:
        e = _drop(tuple(x + y for x, y in zip(f.nu, f.alpha)), j)
        out.append(monomial(e, w * c / (c - a)))
    if b < c:
        e = _drop(tuple(x + y for x, y in zip(f.nu, f.beta)), j)
        out.append(monomial(e, w * c / (c - b)))
    return out


def ecoeff(P, c, j: int) -> tuple:
    """Coefficient ideal along ``x_j = 0`` at control ``c``; ``()`` is the zero ideal."""
    if P is ONE:
        return ()
    out = []
    for f in P:
        out.extend(ecoeff_generator(f, c, j))
    return tuple(dict.fromkeys(out))


def junior(P, c, j: int):
    if P is ONE:
        return ONE
    return ecoeff(P, c, j) or ONE
