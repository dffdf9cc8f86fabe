import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evoseries.shift_algebra import (
    BinomialGroupDecomposition,
    ShiftPolynomial,
    binomial_group,
    letter_matrix,
    power_expand,
    realize,
    reduce,
    shift_identities_check,
    word_power_mixed,
)

words = st.text(alphabet="US", min_size=0, max_size=10)


def upoly(*pairs):
    # polynomial in U alone: pairs of (power, coeff)
    return ShiftPolynomial({(0, k): c for k, c in pairs})


def test_polynomial_canonical_form():
    p = ShiftPolynomial({(0, 1): Fraction(2), (1, 0): Fraction(0)})
    assert p.terms == (((0, 1), Fraction(2)),)
    assert (p - p).is_zero()
    assert p + p == ShiftPolynomial({(0, 1): 4})
    assert 3 * p == ShiftPolynomial({(0, 1): 6})
    assert p.with_delay(2) == ShiftPolynomial({(2, 1): 2})
    with pytest.raises(ValueError):
        ShiftPolynomial({(-1, 0): 1})


def test_reduce_base_cases():
    assert reduce("") == ShiftPolynomial.identity()
    assert reduce("U") == ShiftPolynomial.monomial(0, 1)
    assert reduce("SU") == ShiftPolynomial.monomial(1, 1)
    # the defining relation: U S = I - S
    assert reduce("US") == ShiftPolynomial({(0, 0): 1, (1, 0): -1})
    # S U S U = S(I - S)U
    assert reduce("SUSU") == ShiftPolynomial({(1, 1): 1, (2, 1): -1})


def test_reduce_rejects_unknown_letters():
    with pytest.raises(ValueError):
        reduce("UXS")


def test_reduce_canonical_words_pass_through():
    for s in range(3):
        for k in range(3):
            if s + k == 0:
                continue
            word = "S" * s + "U" * k
            assert reduce(word) == ShiftPolynomial.monomial(s, k)


@given(words, st.integers(0, 2**32 - 1))
@settings(max_examples=150)
def test_reduce_confluent_under_random_orders(word, seed):
    rng = random.Random(seed)
    assert reduce(word, rng=rng) == reduce(word)


@given(words)
@settings(max_examples=100)
def test_reduce_agrees_with_matrices(word):
    size = 16
    block = size - max(1, len(word))
    product = np.eye(size)
    for ch in word:
        product = product @ letter_matrix(ch, size)
    realized = realize(reduce(word), size)
    assert np.array_equal(product[:block, :block], realized[:block, :block])


def test_word_power_mixed_small_cases():
    assert word_power_mixed(1, 1) == ShiftPolynomial({(0, 1): 1, (1, 1): -1})
    assert word_power_mixed(2, 2) == ShiftPolynomial(
        {(0, 2): 1, (0, 1): -2, (1, 1): 3, (2, 1): -1}
    )
    with pytest.raises(ValueError):
        word_power_mixed(0, 1)


@given(st.integers(1, 4), st.integers(1, 4))
@settings(max_examples=16, deadline=None)
def test_word_power_mixed_matches_reduce(p, q):
    assert word_power_mixed(p, q) == reduce("U" * p + "SU" * q)


def test_identities_hold():
    for q in range(1, 5):
        for r in range(1, 5):
            report = shift_identities_check(q, r)
            assert report.all_pass, (q, r, report)


def test_identities_hand_case():
    # q = r = 1: U S == (I - S) and U^2 S == U(I - S)
    report = shift_identities_check(1, 1)
    assert report.absorb and report.transfer and report.peel


def test_binomial_group_worked_example():
    group = binomial_group(2, 2)
    assert group.k == 4
    assert group.head == upoly((2, 3), (1, -3))
    assert group.tails[0] == upoly((3, 3), (2, -5), (1, 6))
    assert group.tails[1] == upoly((3, -1), (2, 2), (1, -3))
    assert len(group.tails) == 2


def test_binomial_group_cubic_table():
    # all four groups behind the cubic expansion
    g30 = binomial_group(3, 0)
    assert g30.head == upoly((3, 1)) and g30.tails == ()
    g21 = binomial_group(2, 1)
    assert g21.head == upoly((2, 2), (1, -1))
    assert g21.tails == (upoly((3, 1), (2, -1), (1, 1)),)
    g12 = binomial_group(1, 2)
    assert g12.head == upoly((1, 1))
    assert g12.tails == (upoly((2, 2), (1, -3)), upoly((2, -1), (1, 2)))
    g03 = binomial_group(0, 3)
    assert g03.head.is_zero()
    assert g03.tails == (upoly((1, 1)), upoly((1, -2)), upoly((1, 1)))


def test_binomial_group_recombines():
    for m, j in [(1, 1), (2, 2), (0, 4), (3, 1), (2, 3)]:
        group = binomial_group(m, j)
        direct = ShiftPolynomial.zero()
        import itertools

        for positions in itertools.combinations(range(m + j), m):
            chosen = set(positions)
            word = "".join("U" if i in chosen else "SU" for i in range(m + j))
            direct = direct + reduce(word)
        assert group.combined() == direct


def test_binomial_group_head_power_cap():
    # undelayed part never exceeds U^m
    for m, j in [(1, 3), (2, 2), (3, 2), (0, 5)]:
        group = binomial_group(m, j)
        assert group.head.max_power <= m


def test_binomial_group_guard():
    with pytest.raises(ValueError):
        binomial_group(7, 6)
    with pytest.raises(ValueError):
        binomial_group(0, 0)


def test_power_expand_first_power():
    lam, mu = Fraction(3), Fraction(2)
    assert power_expand(1, lam, mu) == ShiftPolynomial({(0, 1): 3, (1, 1): -2})


def test_power_expand_cubic_matches_group_table():
    lam, mu = Fraction(5), Fraction(7)
    expected = (
        binomial_group(3, 0).combined() * lam**3
        + binomial_group(2, 1).combined() * (-(lam**2) * mu)
        + binomial_group(1, 2).combined() * (lam * mu**2)
        + binomial_group(0, 3).combined() * (-(mu**3))
    )
    assert power_expand(3, lam, mu) == expected
    # spot-check one collected coefficient: S^1 U^1 picks up
    # -lam^2 mu - 3 lam mu^2 - mu^3
    coeff = power_expand(3, lam, mu).coefficient(1, 1)
    assert coeff == -(lam**2) * mu - 3 * lam * mu**2 - mu**3


def test_power_expand_binomial_oracle():
    # expand (lam U - mu S U)^k the brute way: 2^k sign words
    import itertools

    lam, mu = Fraction(2), Fraction(3)
    for k in (2, 3, 4):
        direct = ShiftPolynomial.zero()
        for picks in itertools.product((0, 1), repeat=k):
            word = "".join("U" if c == 0 else "SU" for c in picks)
            weight = lam ** (k - sum(picks)) * (-mu) ** sum(picks)
            direct = direct + reduce(word) * weight
        assert power_expand(k, lam, mu) == direct


def test_power_expand_guard():
    with pytest.raises(ValueError):
        power_expand(13, 1, 1)
    with pytest.raises(ValueError):
        power_expand(0, 1, 1)


def test_realize_small_cases():
    size = 6
    assert np.array_equal(realize(ShiftPolynomial.identity(), size), np.eye(size))
    u = letter_matrix("U", size)
    s = letter_matrix("S", size)
    assert np.array_equal(realize(ShiftPolynomial.monomial(1, 1), size), s @ u)


def test_realize_size_guard():
    poly = ShiftPolynomial.monomial(2, 3)
    with pytest.raises(ValueError):
        realize(poly, 5)
    realize(poly, 6)  # boundary size is allowed
