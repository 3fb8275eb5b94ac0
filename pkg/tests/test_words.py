import random

import pytest
from hypothesis import given, strategies as st

from filtrate.words import (
    BasicCommutator,
    GroupWord,
    WordSyntaxError,
    basic_commutator,
    commutator,
    enumerate_monomials,
    format_monomial,
    format_word,
    generator,
    invert,
    is_lyndon,
    lyndon_words,
    multiply,
    parse_monomial,
    parse_word,
    power,
    realize,
)

from helpers import brute_lyndon, necklace_by_mobius, random_reduced_word

signed_letters = st.lists(
    st.integers(min_value=1, max_value=3).flatmap(
        lambda i: st.sampled_from([i, -i])
    ),
    max_size=12,
)


def words(draw_letters=signed_letters):
    return draw_letters.map(lambda ls: GroupWord(3, ls))


def test_free_reduction_is_eager_and_complete():
    w = GroupWord(2, (1, 2, -2, -1, 1))
    assert w.letters == (1,)
    assert GroupWord(2, (1, -1)).is_identity
    # nested cancellation needs the stack, not a single adjacent scan
    assert GroupWord(2, (1, 2, 2, -2, -2, -1)).is_identity


def test_letters_validated():
    with pytest.raises(ValueError):
        GroupWord(2, (3,))
    with pytest.raises(ValueError):
        GroupWord(2, (0,))
    with pytest.raises(ValueError):
        GroupWord(0, ())


def test_group_operations():
    x1, x2 = generator(2, 1), generator(2, 2)
    assert multiply(x1, invert(x1)).is_identity
    assert power(x1 * x2, -1).letters == (-2, -1)
    assert power(x1, 3).letters == (1, 1, 1)
    assert power(x1, 0).is_identity
    assert commutator(x1, x1).is_identity
    assert commutator(x1, x2).letters == (-1, -2, 1, 2)
    e = GroupWord(2)
    assert commutator(x1, e).is_identity
    assert commutator(e, x1).is_identity


def test_alphabet_mismatch_is_an_error():
    with pytest.raises(ValueError):
        multiply(generator(2, 1), generator(3, 1))


def test_parse_examples():
    assert parse_word("x1*x1^-1", 2).is_identity
    assert parse_word("[x1,x2]", 2).letters == (-1, -2, 1, 2)
    assert parse_word("x1^3", 2).letters == (1, 1, 1)
    assert parse_word("e", 2).is_identity
    assert parse_word("(x1*x2)^2", 2).letters == (1, 2, 1, 2)
    assert parse_word("[x1, [x1, x2]]", 2) == commutator(
        generator(2, 1), commutator(generator(2, 1), generator(2, 2))
    )
    assert parse_word(" e * x1 ", 2).letters == (1,)
    assert parse_word("[x1,e]", 2).is_identity
    assert parse_word("x2^-2", 2).letters == (-2, -2)


def test_parse_errors_carry_position():
    with pytest.raises(WordSyntaxError) as info:
        parse_word("x1**", 2)
    assert info.value.position == 3
    with pytest.raises(WordSyntaxError):
        parse_word("", 2)
    with pytest.raises(WordSyntaxError):
        parse_word("x0", 2)
    with pytest.raises(WordSyntaxError) as info:
        parse_word("x3", 2)
    assert "x3" in str(info.value)
    with pytest.raises(WordSyntaxError):
        parse_word("[x1,x2", 2)
    with pytest.raises(WordSyntaxError):
        parse_word("(x1", 2)
    with pytest.raises(WordSyntaxError):
        parse_word("x1^", 2)
    with pytest.raises(WordSyntaxError):
        parse_word("x1 x2", 2)
    with pytest.raises(WordSyntaxError):
        parse_word("y1", 2)


def test_format_round_trip_counted():
    rng = random.Random(21)
    for _ in range(1000):
        k = rng.randint(1, 4)
        w = random_reduced_word(rng, k, 14)
        assert parse_word(format_word(w), k) == w


@given(words())
def test_format_round_trip(w):
    assert parse_word(format_word(w), 3) == w


@given(words(), words(), words())
def test_multiplication_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(words())
def test_inverse_cancels(w):
    assert (w * w.inverse()).is_identity
    assert (w.inverse() * w).is_identity


@given(words(), st.integers(min_value=-4, max_value=4))
def test_power_matches_repeated_product(w, k):
    expected = GroupWord(3)
    step = w if k >= 0 else w.inverse()
    for _ in range(abs(k)):
        expected = expected * step
    assert w ** k == expected


def test_reduction_leaves_no_adjacent_cancellation():
    rng = random.Random(22)
    for _ in range(300):
        w = random_reduced_word(rng, 3, 20)
        assert all(a != -b for a, b in zip(w.letters, w.letters[1:]))


def test_enumerate_monomials():
    assert list(enumerate_monomials(2, 1)) == [(1,), (2,)]
    assert list(enumerate_monomials(2, 2)) == [(1, 1), (1, 2), (2, 1), (2, 2)]
    assert list(enumerate_monomials(3, 0)) == [()]
    ms = list(enumerate_monomials(3, 3))
    assert len(ms) == 27 == len(set(ms))
    assert ms == sorted(ms)
    with pytest.raises(ValueError):
        list(enumerate_monomials(0, 2))


def test_monomial_formatting():
    assert format_monomial((1, 2)) == "x1x2"
    assert format_monomial(()) == "e"
    assert parse_monomial("x1x2", 2) == (1, 2)
    assert parse_monomial("e", 2) == ()
    assert parse_monomial("x12", 12) == (12,)
    with pytest.raises(WordSyntaxError):
        parse_monomial("x3", 2)
    with pytest.raises(WordSyntaxError):
        parse_monomial("x1*x2", 2)
    with pytest.raises(WordSyntaxError):
        parse_monomial("x", 2)


def test_lyndon_words_examples():
    assert list(lyndon_words(2, 1)) == [(1,), (2,)]
    assert list(lyndon_words(2, 2)) == [(1, 2)]
    assert list(lyndon_words(2, 3)) == [(1, 1, 2), (1, 2, 2)]
    assert list(lyndon_words(3, 2)) == [(1, 2), (1, 3), (2, 3)]


def test_lyndon_words_against_rotation_minimality():
    for k in (2, 3):
        for n in range(1, 7):
            assert list(lyndon_words(k, n)) == brute_lyndon(k, n)


def test_lyndon_words_are_sorted_and_counted_by_necklaces():
    for k in (2, 3, 4):
        for n in range(1, 7):
            ws = list(lyndon_words(k, n))
            assert ws == sorted(ws)
            assert len(ws) == necklace_by_mobius(k, n)


def test_is_lyndon():
    assert is_lyndon((1, 1, 2))
    assert not is_lyndon((2, 1))
    assert not is_lyndon((1, 2, 1, 2))
    assert is_lyndon((1,))
    assert not is_lyndon(())


def test_basic_commutator_structure():
    bc = basic_commutator((1, 2))
    assert bc.left == BasicCommutator(gen=1)
    assert bc.right == BasicCommutator(gen=2)
    # the split is at the longest proper Lyndon suffix
    assert str(basic_commutator((1, 1, 2))) == "[x1,[x1,x2]]"
    assert str(basic_commutator((1, 2, 2))) == "[[x1,x2],x2]"
    assert str(basic_commutator((1, 1, 2, 2))) == "[x1,[[x1,x2],x2]]"
    with pytest.raises(ValueError):
        basic_commutator((2, 1))
    with pytest.raises(ValueError):
        basic_commutator(())


def test_basic_commutator_foliage_and_weight():
    for k in (2, 3):
        for n in range(1, 6):
            for u in lyndon_words(k, n):
                bc = basic_commutator(u)
                assert bc.leaf_word() == u
                assert bc.weight == n


def test_basic_commutator_shape_validation():
    with pytest.raises(ValueError):
        BasicCommutator()
    with pytest.raises(ValueError):
        BasicCommutator(gen=1, left=BasicCommutator(gen=1), right=BasicCommutator(gen=2))


def test_realize():
    assert realize(basic_commutator((1,)), 2).letters == (1,)
    assert realize(basic_commutator((1, 2)), 2).letters == (-1, -2, 1, 2)
    nested = realize(basic_commutator((1, 1, 2)), 2)
    x1, x2 = generator(2, 1), generator(2, 2)
    assert nested == commutator(x1, commutator(x1, x2))
    with pytest.raises(ValueError):
        realize(basic_commutator((1, 3)), 2)
