from hypothesis import assume, given, settings
from hypothesis import strategies as st
import pytest

from binres.core import (
    HYPERBOLIC,
    MONOMIAL,
    PROPER,
    Chart,
    Coefficient,
    Q,
    ZeroGenerator,
    canonical_set,
    monomial,
    normalize_binomial,
    reduced_set,
    renormalize,
    stratum,
)
from binres.oracle import DensePolynomial, expand

from support import C, CHARACTERISTICS, binomials, gen

b = C(Q(7, 3))


def test_normalize_swaps_to_lower_degree_side():
    f = normalize_binomial((2, 1, 0), (1, 0, 1), C(1), b)
    assert f.kind == PROPER
    assert f.nu == (1, 0, 0)
    assert f.alpha == (0, 0, 1)
    assert f.beta == (1, 1, 0)
    assert f.coeff == C(Q(3, 7))


def test_one_vanishing_coefficient_leaves_a_monomial():
    f = normalize_binomial((3, 0, 0), (0, 2, 1), C(1), C(0))
    assert f.kind == MONOMIAL and f.nu == (3, 0, 0)


def test_pure_unit_side_gives_hyperbolic():
    mu = C(5)
    f = normalize_binomial((0, 0), (2, 0), C(1), mu, invertible={1})
    assert f.kind == HYPERBOLIC
    assert f.delta == (2, 0) and f.coeff == mu and not any(f.nu)


def test_pth_power_allowed_in_char_2():
    f = gen((2, 0), (0, 2), p=2)
    # equal degrees: the lexicographically smaller side is alpha
    assert f.kind == PROPER and f.alpha == (0, 2) and f.beta == (2, 0)
    assert f.coeff == Coefficient(1, 2)


@pytest.mark.parametrize("plus, minus, pc, mc", [((1, 2), (1, 2), 3, 3), ((1, 0), (0, 1), 0, 0)])
def test_zero_generator(plus, minus, pc, mc):
    with pytest.raises(ZeroGenerator, match="zero generator"):
        normalize_binomial(plus, minus, C(pc), C(mc))


def test_equal_exponents_collapse_to_monomial():
    f = normalize_binomial((1, 2), (1, 2), C(3), C(1))
    assert f.kind == MONOMIAL and f.nu == (1, 2)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        normalize_binomial((1, 2), (1,), C(1), C(1))
    with pytest.raises(ValueError):
        normalize_binomial((-1, 0), (0, 1), C(1), C(1))
    with pytest.raises(ValueError):
        normalize_binomial((1, 0), (0, 1), C(1), C(1), weight=0)


def test_negative_exponents_fine_on_units():
    f = normalize_binomial((-2, 1, 0), (0, 0, 2), C(1), C(2), invertible={1})
    assert f.kind == PROPER and f.gamma == (-2, 0, 0)
    assert f.alpha == (0, 1, 0) and f.beta == (0, 0, 2)
    g = normalize_binomial((0, 1), (-2, 0), C(1), C(2), invertible={1})
    assert g.kind == HYPERBOLIC and g.nu == (0, 0) and g.delta == (2, 1)


def test_chart_rejects_exceptional_unit():
    with pytest.raises(ValueError):
        Chart(2, frozenset({1}), H=frozenset({(1, 1)}))
    with pytest.raises(ValueError):
        stratum({1, 2}, Chart(2, frozenset({2})))


def test_format():
    assert str(gen((2, 0), (0, 3))) == "(x1^2 - 1*x2^3)"
    assert str(monomial((1, 2), Q(1, 2))) == "[x1*x2^2]^(1/2)"


def test_canonical_set_folds_weights():
    assert canonical_set([monomial((1, 0), 2)]) == canonical_set([monomial((2, 0))])


def test_reduced_set_drops_units_and_dominated_monomials():
    hyp = normalize_binomial((1, 0, 0), (1, 0, 2), C(1), C(3), invertible={3})
    dominated = monomial((2, 1, 0))
    assert reduced_set([hyp, dominated]) == frozenset({monomial((1, 0, 0))})


@given(st.sampled_from(CHARACTERISTICS), st.integers(-50, 50), st.integers(1, 50))
def test_coefficient_inverse(p, num, den):
    assume(p == 0 or den % p)
    x = Coefficient(Q(num, den), p)
    if x.is_zero():
        with pytest.raises(ZeroDivisionError):
            x.inverse()
    else:
        assert x * x.inverse() == Coefficient(1, p)
        assert x / x == Coefficient(1, p)


@given(binomials())
def test_normalize_is_idempotent(f):
    assert renormalize(f, ()) == f


@given(binomials())
def test_terms_are_coprime(f):
    if f.kind == PROPER:
        assert all(min(a, b) == 0 for a, b in zip(f.alpha, f.beta))
        assert sum(f.alpha) <= sum(f.beta)


@st.composite
def raw_pair(draw):
    n = draw(st.integers(1, 4))
    p = draw(st.sampled_from(CHARACTERISTICS))
    exps = st.tuples(*[st.integers(0, 4)] * n)
    coeffs = st.integers(1, 9).map(lambda v: C(v, p)).filter(lambda c: not c.is_zero())
    return n, p, draw(exps), draw(exps), draw(coeffs), draw(coeffs), draw(coeffs)


@settings(max_examples=200)
@given(raw_pair())
def test_normal_form_spans_the_same_ideal(data):
    n, p, plus, minus, pc, mc, lam = data
    try:
        f = normalize_binomial(plus, minus, pc, mc)
    except ZeroGenerator:
        return
    raw = DensePolynomial.from_terms(n, p, [(plus, pc), (minus, -mc)])
    mine = expand(f, p)
    # same polynomial up to a nonzero constant
    (e, c0), = [(e, c) for e, c in mine.terms.items()][:1]
    scale = raw.terms[e] / c0
    assert {k: v * scale for k, v in mine.terms.items()} == raw.terms
    # swapping the sides or rescaling both coefficients changes nothing
    assert normalize_binomial(minus, plus, mc, pc) == f
    assert normalize_binomial(plus, minus, pc * lam, mc * lam) == f
