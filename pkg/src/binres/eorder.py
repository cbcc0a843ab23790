"""E-order of generators and ideals, evaluated stratum by stratum.

A stratum is a frozenset of non-invertible variable indices: the set of points
where exactly those coordinates vanish.  The E-order is constant on it.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .core import HYPERBOLIC, MONOMIAL, Binomial, Chart, degree


def eord_generator(f: Binomial, lam) -> Fraction:
    return _eord_cached(f, frozenset(lam))


@lru_cache(maxsize=1 << 16)
def _eord_cached(f: Binomial, lam: frozenset) -> Fraction:
    body = 0
    if f.kind not in (MONOMIAL, HYPERBOLIC):
        body = min(degree(f.alpha, lam), degree(f.beta, lam))
    return f.weight * (degree(f.nu, lam) + body)


def eord_ideal(J, lam) -> Fraction:
    if not J:
        raise ValueError("empty ideal")
    return min(eord_generator(f, lam) for f in J)


def all_strata(chart: Chart) -> list:
    """Every stratum of the chart, smallest first, in a fixed order."""
    xs = chart.xvars
    return [frozenset(s) for k in range(len(xs) + 1) for s in combinations(xs, k)]


def minimal(strata) -> list:
    """Inclusion-minimal members, in the order given."""
    strata = list(strata)
    return [s for s in strata if not any(t < s for t in strata)]


def sort_strata(strata) -> list:
    return sorted(strata, key=lambda s: (len(s), sorted(s)))


def esing_all(J, c, chart: Chart) -> list:
    """All strata where the E-order reaches ``c``."""
    return [s for s in all_strata(chart) if eord_ideal(J, s) >= c]


def esing(J, c, chart: Chart) -> list:
    if c < 1:
        raise ValueError("control must be >= 1")
    return minimal(esing_all(J, c, chart))


def etop(J, chart: Chart) -> tuple:
    values = {s: eord_ideal(J, s) for s in all_strata(chart)}
    top = max(values.values())
    return top, minimal(s for s, v in values.items() if v == top)


def equimultiple_locus(f: Binomial, lam0, chart: Chart) -> list:
    target = eord_generator(f, lam0)
    return [s for s in all_strata(chart) if eord_generator(f, s) == target]
