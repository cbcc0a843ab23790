"""Combinatorial blow-ups in charts and the transforms they induce."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .core import Q, MONOMIAL, Binomial, Chart, monomial, normalize_binomial, one


class NonCombinatorialCenter(ValueError):
    pass


class IllegalTransform(ArithmeticError):
    pass


@dataclass(frozen=True)
class BlowUpRecord:
    center: frozenset
    j: int
    stage: int

    @property
    def exceptional_index(self) -> int:
        return self.j


def substitute(e: tuple, center, j: int) -> tuple:
    """Pull back an exponent vector along ``x_i -> x_j * x_i`` for ``i`` in center."""
    out = list(e)
    out[j - 1] = sum(e[i - 1] for i in center)
    return tuple(out)


def pullback_divisor(D: dict, center, j: int) -> dict:
    out = {k: Q(v) for k, v in D.items()}
    total = sum(Q(D.get(i, 0)) for i in center)
    if total:
        out[j] = total
    else:
        out.pop(j, None)
    return out


def blow_up_chart(chart: Chart, center, j: int, stage: int | None = None) -> Chart:
    center = frozenset(center)
    if center & chart.invertible or not center <= set(chart.xvars):
        raise NonCombinatorialCenter("non-combinatorial center")
    if j not in center:
        raise ValueError("chart variable must belong to the center")
    if stage is None:
        stage = len(chart.history) + 1
    H = frozenset((v, b) for v, b in chart.H if v != j) | {(j, stage)}
    step = (j, tuple(sorted(center)))
    return replace(chart, H=H, history=chart.history + (step,))


def transform_generator(
    f: Binomial,
    center,
    j: int,
    mode: str = "total",
    c=None,
    theta=None,
    invertible=(),
) -> Binomial:
    """Total, weak (divide by ``x_j^theta``) or controlled (divide by ``x_j^c``) transform."""
    center = frozenset(center)
    if f.kind == MONOMIAL:
        g = monomial(substitute(f.nu, center, j), f.weight)
    else:
        (_, e1), (c2, e2) = f.terms()
        g = normalize_binomial(
            substitute(e1, center, j), substitute(e2, center, j), one(c2.p), c2, invertible, f.weight
        )
    if mode == "total":
        return g
    if mode == "weak":
        amount = theta
    elif mode == "controlled":
        amount = c
    else:
        raise ValueError(f"unknown transform mode {mode!r}")
    nu = list(g.nu)
    nu[j - 1] -= Q(amount) / g.weight
    if nu[j - 1] < 0:
        raise IllegalTransform("illegal transform")
    return g.with_nu(tuple(nu))


def transform_ideal(J, center, j, mode, c=None, theta=None, invertible=()) -> tuple:
    return tuple(
        dict.fromkeys(transform_generator(f, center, j, mode, c, theta, invertible) for f in J)
    )


def transform_divisors(D, H, rec: BlowUpRecord, t_constant_upto: int, theta: dict, c: dict) -> tuple:
    """Transform per-dimension divisors ``D`` and exceptional sets ``H``.

    ``D`` and ``H`` are sequences indexed by dimension minus one.
    ``t_constant_upto = k`` means the components ``t_n .. t_k`` are unchanged
    at the new point (``n + 1`` when even the first one changed).  ``theta[i]``
    and ``c[i]`` are the values ``theta_i`` and ``c_{i+1}`` at the center.
    """
    n = len(D)
    new_D = []
    for i in range(1, n + 1):
        if t_constant_upto <= i + 1 and i in theta:
            d = pullback_divisor(D[i - 1], rec.center, rec.j)
            d[rec.j] = d.get(rec.j, 0) + Q(theta[i]) - Q(c[i])
            if d[rec.j] < 0:
                raise IllegalTransform("negative divisor multiplicity")
            new_D.append({k: v for k, v in d.items() if v})
        else:
            new_D.append({})
    return tuple(new_D), transform_hypersurfaces(H, rec, t_constant_upto)


def transform_hypersurfaces(H, rec: BlowUpRecord, t_constant_upto: int) -> tuple:
    """Per-dimension exceptional sets after a blow-up; entries are ``(variable, birth)``."""
    n = len(H)
    exceptional = (rec.j, rec.stage)
    old = set()
    for h in H:
        old |= {e for e in h if e[0] != rec.j}
    new_H = [None] * n
    taken = set()
    for i in range(n, 0, -1):
        if t_constant_upto <= i:
            h = {e for e in H[i - 1] if e[0] != rec.j}
        else:
            h = (old | {exceptional}) - taken
        new_H[i - 1] = frozenset(h)
        taken |= h
    return tuple(new_H)
