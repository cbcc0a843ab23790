"""Shared builders and random generators for the test suite."""

from __future__ import annotations

import random
from itertools import combinations

from hypothesis import strategies as st

from binres.core import Chart, Coefficient, ZeroGenerator, normalize_binomial
from binres.resolver import root_bboe

CHARACTERISTICS = (0, 2, 3, 5)


def C(value, p=0):
    return Coefficient(value, p)


def gen(plus, minus=None, pc=1, mc=1, p=0, inv=()):
    """``pc*x^plus - mc*x^minus`` in normal form; ``minus=None`` gives a monomial."""
    if minus is None:
        minus, mc = (0,) * len(plus), 0
    return normalize_binomial(tuple(plus), tuple(minus), C(pc, p), C(mc, p), inv)


def problem(gens, c, n=None, p=0, inv=()):
    n = n or gens[0].n
    return root_bboe(Chart(n, frozenset(inv), p=p), gens, c)


def all_subsets(xs):
    xs = sorted(xs)
    return [frozenset(s) for k in range(len(xs) + 1) for s in combinations(xs, k)]


def random_generator(rng: random.Random, n: int, p: int, inv=frozenset(), max_exp: int = 4):
    """A random normalized binomial, redrawn until it is nonzero."""
    while True:
        plus = tuple(rng.randint(0, max_exp) for _ in range(n))
        minus = tuple(rng.randint(0, max_exp) for _ in range(n))
        pc = rng.randint(1, 6)
        mc = rng.choice((0, 1, 2, 3, 4, 5, 6))
        try:
            return normalize_binomial(plus, minus, C(pc, p), C(mc, p), inv)
        except ZeroGenerator:
            continue


def random_problem(rng: random.Random, max_vars: int = 4, max_exp: int = 4):
    """(chart, generators, control) drawn uniformly from the sweep ranges:
    up to four variables, exponents up to four, one to three generators,
    control 1..4 and characteristic 0, 2, 3 or 5."""
    n = rng.randint(1, max_vars)
    p = rng.choice(CHARACTERISTICS)
    inv = frozenset()
    if n > 1 and rng.random() < 0.25:
        inv = frozenset({rng.randint(1, n)})
    k = rng.randint(1, 3)
    gens = [random_generator(rng, n, p, inv, max_exp) for _ in range(k)]
    c = rng.randint(1, 4)
    return Chart(n, inv, p=p), gens, c


@st.composite
def binomials(draw, n=None, p=None, inv=None, max_exp=4):
    n = draw(st.integers(1, 4)) if n is None else n
    p = draw(st.sampled_from(CHARACTERISTICS)) if p is None else p
    inv = frozenset() if inv is None else frozenset(inv)
    exps = st.tuples(*[st.integers(0, max_exp)] * n)
    plus, minus = draw(exps), draw(exps)
    pc = draw(st.integers(1, 6))
    mc = draw(st.integers(0, 6))
    try:
        return normalize_binomial(plus, minus, C(pc, p), C(mc, p), inv)
    except ZeroGenerator:
        return normalize_binomial(plus, (0,) * n, C(1, p), C(0, p), inv)


@st.composite
def ideals(draw, n=None, p=None, max_gens=3, max_exp=4):
    n = draw(st.integers(1, 4)) if n is None else n
    p = draw(st.sampled_from(CHARACTERISTICS)) if p is None else p
    k = draw(st.integers(1, max_gens))
    return n, p, [draw(binomials(n=n, p=p, max_exp=max_exp)) for _ in range(k)]


@st.composite
def unit_binomials(draw, max_exp=4):
    """A binomial on 2..4 variables with a random nonempty set of units."""
    n = draw(st.integers(2, 4))
    inv = draw(st.sets(st.integers(1, n), min_size=1, max_size=n - 1))
    f = draw(binomials(n=n, inv=inv, max_exp=max_exp))
    return f, frozenset(inv)
