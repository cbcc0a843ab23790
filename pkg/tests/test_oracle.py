from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from binres.core import Q, canonical_set, monomial
from binres.eorder import eord_generator
from binres.mobile import ecoeff
from binres.oracle import (
    DensePolynomial,
    OracleOutOfRange,
    ecoeff_oracle,
    eord_membership_oracle,
    expand,
    membership_order,
    ord_at_stratum_oracle,
    taylor_coeff_oracle,
    to_generator,
)

from support import C, binomials, gen, unit_binomials


def test_dense_arithmetic_cancels():
    x = DensePolynomial(2, 0, {(1, 0): C(1)})
    y = DensePolynomial(2, 0, {(0, 1): C(-1)})
    s = (x + y).power(2)
    assert s.terms == {(2, 0): C(1), (1, 1): C(-2), (0, 2): C(1)}
    assert (x + y + DensePolynomial(2, 0, {(0, 1): C(1)})).terms == x.terms


def test_frobenius_in_char_2():
    f = expand(gen((1, 0), (0, 1), p=2))
    assert f.power(2).terms == {(2, 0): C(1, 2), (0, 2): C(1, 2)}


def test_order_at_points():
    # x1 - 2 vanishes at the test point x1 = 2 although it is a unit along E
    f = gen((1, 0), (0, 0), 1, 2)
    assert eord_generator(f, set()) == 0
    assert ord_at_stratum_oracle(f, set(), 10) == 1
    assert ord_at_stratum_oracle(gen((2, 0), (0, 3)), {1, 2}, 10) == 2
    assert ord_at_stratum_oracle(gen((2, 0), (0, 3)).with_weight(Q(1, 2)), {1, 2}, 10) == 1


def test_out_of_range():
    with pytest.raises(OracleOutOfRange, match="oracle out of range"):
        ord_at_stratum_oracle(gen((9, 0), (0, 1)), {1}, 5)


def test_membership():
    J = [gen((1, 1, 0), (0, 0, 2)), gen((3, 0, 0))]
    assert eord_membership_oracle(J, {1, 2, 3}, 2)
    assert not eord_membership_oracle(J, {1, 2, 3}, 3)
    assert membership_order(J, {1, 2, 3}, 10) == 2


def test_taylor_coefficients():
    f = gen((1, 2, 0), (0, 0, 2))
    got = taylor_coeff_oracle(f, 1)
    assert [k for k, _ in got] == [1, 0]
    assert to_generator(got[0][1]) == monomial((0, 2, 0))


def test_ecoeff_oracle_examples():
    P = [gen((1, 1, 0), (0, 0, 2))]
    assert canonical_set(ecoeff_oracle(P, 2, 1)) == canonical_set([monomial((0, 2, 0)), monomial((0, 0, 2))])


@settings(max_examples=200)
@given(unit_binomials(), st.data())
def test_eord_with_units_matches_membership(fi, data):
    f, inv = fi
    lam = data.draw(st.sets(st.sampled_from(sorted(set(range(1, f.n + 1)) - inv))))
    assert eord_generator(f, lam) == membership_order([f], lam, 40)
    assert eord_generator(f, lam) <= ord_at_stratum_oracle(f, lam, 40)


weights = st.sampled_from([Q(1), Q(1, 2), Q(2), Q(3, 2)])


@settings(max_examples=300)
@given(st.lists(binomials(n=3), min_size=1, max_size=3), st.lists(weights, min_size=3, max_size=3),
       st.integers(1, 4), st.integers(1, 3))
def test_ecoeff_matches_taylor_oracle(gens, ws, c, j):
    P = [f.with_weight(w) for f, w in zip(gens, ws)]
    assert canonical_set(ecoeff(P, c, j)) == canonical_set(ecoeff_oracle(P, c, j))


@settings(max_examples=100)
@given(unit_binomials(), st.integers(1, 4), st.data())
def test_ecoeff_matches_taylor_oracle_with_units(fi, c, data):
    f, inv = fi
    j = data.draw(st.sampled_from(sorted(set(range(1, f.n + 1)) - inv)))
    assert canonical_set(ecoeff([f], c, j)) == canonical_set(ecoeff_oracle([f], c, j, inv))
