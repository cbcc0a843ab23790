"""Invariant and center for the monomial case."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .core import Q


class NotESingular(ValueError):
    pass


@dataclass(frozen=True)
class GammaValue:
    g1: int  # minus the size of the smallest subset reaching c
    g2: Fraction
    g3: tuple

    def key(self) -> tuple:
        return (self.g1, self.g2, self.g3)

    def __lt__(self, other: "GammaValue") -> bool:
        return self.key() < other.key()

    def __le__(self, other: "GammaValue") -> bool:
        return self.key() <= other.key()


def gamma_invariant(M: dict, c, lam) -> tuple:
    """Return ``(GammaValue, center)`` for the monomial ``x^M`` at control ``c``."""
    c = Q(c)
    support = sorted(i for i in lam if M.get(i, 0) > 0)
    if sum(Q(M[i]) for i in support) < c:
        raise NotESingular("not E-singular")
    for p in range(1, len(support) + 1):
        best = None
        for sub in combinations(support, p):
            total = sum(Q(M[i]) for i in sub)
            if total < c:
                continue
            cand = (total / c, tuple(sorted(sub, reverse=True)))
            if best is None or cand > best:
                best = cand
        if best is not None:
            g2, g3 = best
            return GammaValue(-p, g2, g3), frozenset(g3)
    raise NotESingular("not E-singular")
