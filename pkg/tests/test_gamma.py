from hypothesis import assume, given
from hypothesis import strategies as st
import pytest

from binres.blowup import pullback_divisor
from binres.core import Q
from binres.gamma import GammaValue, NotESingular, gamma_invariant

from support import all_subsets


@pytest.mark.parametrize(
    "M, c, lam, value, center",
    [
        ({1: 2, 2: 3}, 4, {1, 2}, GammaValue(-2, Q(5, 4), (2, 1)), {1, 2}),
        ({1: 4}, 4, {1}, GammaValue(-1, Q(1), (1,)), {1}),
        ({1: 1, 2: 4, 3: 1}, 4, {1, 2, 3}, GammaValue(-1, Q(1), (2,)), {2}),
    ],
)
def test_gamma_examples(M, c, lam, value, center):
    assert gamma_invariant(M, c, lam) == (value, frozenset(center))


def test_ties_go_to_larger_indices():
    g, center = gamma_invariant({1: 2, 2: 2, 3: 2}, 4, {1, 2, 3})
    assert g == GammaValue(-2, Q(1), (3, 2)) and center == {2, 3}


def test_not_singular():
    with pytest.raises(NotESingular, match="not E-singular"):
        gamma_invariant({1: 1, 2: 1}, 3, {1, 2})
    with pytest.raises(NotESingular):
        gamma_invariant({1: 5}, 2, {2})


def test_fractional_exponents():
    g, _ = gamma_invariant({1: Q(3, 2), 2: Q(1, 2)}, 2, {1, 2})
    assert g == GammaValue(-2, Q(1), (2, 1))


divisors = st.dictionaries(st.integers(1, 4), st.integers(1, 6), min_size=1)


@given(divisors, st.integers(1, 6))
def test_gamma_is_largest_at_the_full_support(M, c):
    full = frozenset(M)
    assume(sum(M.values()) >= c)
    top, _ = gamma_invariant(M, c, full)
    for lam in all_subsets(full):
        if sum(M[i] for i in lam) >= c:
            assert gamma_invariant(M, c, lam)[0] <= top


@given(divisors, st.integers(1, 6))
def test_gamma_drops_after_blowing_up_its_center(M, c):
    """Monomial case: every chart of the blow-up along the Gamma center has
    a strictly smaller maximal Gamma, or is no longer singular."""
    full = frozenset(M)
    assume(sum(M.values()) >= c)
    top, center = gamma_invariant(M, c, full)
    for j in center:
        after = pullback_divisor(M, center, j)
        after[j] -= c  # controlled transform
        assert after[j] >= 0
        after = {i: m for i, m in after.items() if m}
        for lam in all_subsets(after):
            if sum(Q(after[i]) for i in lam) >= c:
                assert gamma_invariant(after, c, lam)[0] < top
