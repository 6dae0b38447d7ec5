import itertools

import pytest
from hypothesis import given, settings as hsettings
from hypothesis import strategies as st

from src.semigroup.errors import BadDigit, RankMismatch, WordSyntaxError
from src.semigroup.odometer import (
    W,
    GeneratorWord,
    LeftForm,
    OdometerElement,
    act,
    add_one,
    digits_value,
    enumerate_elements,
    enumerate_words,
    format_element,
    format_left_form,
    from_left_form,
    multiply,
    parse_element,
    parse_word,
    reduce,
    shift_w,
    subtract_one,
    to_left_form,
    to_word,
)


def elem(n, mu=(), power=0):
    return OdometerElement(n, tuple(mu), power)


def elements(n, max_mu=5, max_power=5):
    return st.builds(
        lambda mu, power: OdometerElement(n, tuple(mu), power),
        st.lists(st.integers(1, n), max_size=max_mu),
        st.integers(0, max_power),
    )


def words(n, max_size=8):
    return st.builds(
        lambda letters: GeneratorWord(tuple(letters), n),
        st.lists(st.integers(0, n), max_size=max_size),
    )


class TestReduce:
    def test_w_v1(self):
        assert reduce(GeneratorWord((W, 1), 2)) == elem(2, [2])

    def test_empty_word(self):
        assert reduce(GeneratorWord((), 2)) == elem(2)

    def test_carry_chain(self):
        assert reduce(GeneratorWord((W, W, W, 2), 2)) == elem(2, [1], 2)

    def test_idempotent_on_normal_forms(self):
        for x in enumerate_elements(2, 4):
            assert reduce(to_word(x)) == x

    def test_rejects_bad_letter(self):
        with pytest.raises(BadDigit):
            GeneratorWord((3,), 2)


class TestMultiply:
    def test_no_rule_fires(self):
        assert multiply(elem(2, [2]), elem(2, [], 1)) == elem(2, [2], 1)

    def test_w_times_v1(self):
        assert multiply(elem(2, [], 1), elem(2, [1])) == elem(2, [2])

    def test_v1_w_v1(self):
        assert multiply(elem(2, [1], 1), elem(2, [1])) == elem(2, [1, 2])

    def test_rank_mismatch(self):
        with pytest.raises(RankMismatch):
            multiply(elem(2), elem(3))

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_identity_is_neutral(self, n):
        one = OdometerElement.identity(n)
        for x in enumerate_elements(n, 3):
            assert one * x == x
            assert x * one == x

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_associative(self, n):
        @hsettings(max_examples=250, deadline=None)
        @given(elements(n), elements(n), elements(n))
        def check(x, y, z):
            assert (x * y) * z == x * (y * z)

        check()

    @pytest.mark.parametrize("n", [2, 3])
    def test_agrees_with_concatenation(self, n):
        @hsettings(max_examples=250, deadline=None)
        @given(words(n), words(n))
        def check(u, v):
            assert reduce(u + v) == multiply(reduce(u), reduce(v))

        check()

    def test_commutative_for_rank_one(self):
        @hsettings(max_examples=200, deadline=None)
        @given(elements(1), elements(1))
        def check(x, y):
            assert x * y == y * x

        check()


class TestLeftForm:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_single_letter(self, k):
        assert to_left_form(elem(3, [k])) == LeftForm(k - 1, 1)

    def test_identity(self):
        assert to_left_form(elem(2)) == LeftForm(0, 0)

    def test_v1_w(self):
        assert to_left_form(elem(2, [1], 1)) == LeftForm(2, 1)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_round_trip(self, n):
        for x in enumerate_elements(n, 3):
            form = to_left_form(x)
            assert from_left_form(form.p, form.q, n) == x
            rebuilt = GeneratorWord((W,) * form.p + (1,) * form.q, n)
            assert reduce(rebuilt) == x


class TestAddOne:
    def test_no_carry(self):
        assert add_one((1,), 2) == ((2,), 0)

    def test_roll_over_first_digit(self):
        assert add_one((2, 1), 2) == ((1, 2), 0)

    def test_empty_word_passes_w_through(self):
        assert add_one((), 3) == ((), 1)

    def test_all_n_word_carries_to_ones(self):
        assert add_one((3, 3, 3), 3) == ((1, 1, 1), 1)

    @pytest.mark.parametrize("n", [2, 3])
    def test_odometer_correspondence(self, n):
        for m in range(4):
            for mu in itertools.product(range(1, n + 1), repeat=m):
                out, carry = add_one(mu, n)
                if carry:
                    assert digits_value(mu, n) == n ** m - 1
                    assert digits_value(out, n) == 0
                else:
                    assert digits_value(out, n) == digits_value(mu, n) + 1

    @pytest.mark.parametrize("n", [2, 3])
    def test_subtract_one_inverts(self, n):
        for mu in itertools.product(range(1, n + 1), repeat=3):
            out, carry = add_one(mu, n)
            assert subtract_one(out, n) == (tuple(mu), carry)

    def test_shift_w_matches_repeated_add_one(self):
        mu = (2, 1, 3)
        current, carries = mu, 0
        for _ in range(40):
            current, carry = add_one(current, 3)
            carries += carry
        assert shift_w(mu, 40, 3) == (current, carries)


@pytest.mark.parametrize("n", [2, 3])
def test_normal_form_equality_is_action_equality(n):
    """Words reduce to the same element exactly when they act alike on small basis vectors"""
    basis = list(enumerate_elements(n, 2))
    by_action, by_reduce = {}, {}
    for word in enumerate_words(n, 6):
        signature = tuple(act(word, x) for x in basis)
        normal = reduce(word)
        assert by_action.setdefault(signature, normal) == normal
        assert by_reduce.setdefault(normal, signature) == signature


class TestText:
    def test_parse_word(self):
        assert parse_word("w w v2 w v1", 2).letters == (W, W, 2, W, 1)

    def test_parse_word_rejects_digit_out_of_range(self):
        with pytest.raises(WordSyntaxError):
            parse_word("w v3", 2)

    def test_parse_word_rejects_garbage(self):
        with pytest.raises(WordSyntaxError):
            parse_word("w x", 2)

    def test_formats(self):
        x = reduce(parse_word("w w w v2", 2))
        assert format_element(x) == "v[1] w^2"
        assert format_left_form(to_left_form(x)) == "w^4 v1^1"

    def test_parse_element(self):
        assert parse_element("v[2,1]w^3", 2) == elem(2, [2, 1], 3)
        assert parse_element("v[] w^0", 2) == elem(2)
