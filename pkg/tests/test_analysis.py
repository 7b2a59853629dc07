import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from abelianwords import (
    BINARY,
    AbelianPowerWitness,
    PeriodicStream,
    PositionSet,
    abelian_complexity,
    avoids_abelian_squares_at,
    balance,
    binary_word,
    builtin_stream,
    complexity_profile,
    density,
    everywhere_k_repetitive,
    is_overlap_free,
    recurrence_gap,
    shortest_abelian_power_at,
    as_stream,
    verify_power,
)


def naive_abelian_complexity(letters, n):
    # hash every window's letter multiset, no cumulative trick
    seen = set()
    for i in range(len(letters) - n + 1):
        seen.add(tuple(sorted(Counter(letters[i:i + n]).items())))
    return len(seen)


def naive_shortest_power(letters, pos, k, max_period):
    for period in range(1, max_period + 1):
        if pos + k * period > len(letters):
            break
        blocks = [Counter(letters[pos + i * period:pos + (i + 1) * period])
                  for i in range(k)]
        if all(b == blocks[0] for b in blocks[1:]):
            return period
    return None


class TestAbelianComplexity:
    def test_tm_alternation(self):
        tm = builtin_stream("tm")
        for n in range(1, 33):
            assert abelian_complexity(tm, n, 2 ** 13) == (2 if n % 2 else 3)

    def test_fibonacci_constant_two(self):
        fib = builtin_stream("fib")
        for n in (1, 2, 5, 13, 40):
            assert abelian_complexity(fib, n, 2 ** 13) == 2

    def test_zero_length(self):
        assert abelian_complexity(builtin_stream("tm"), 0, 16) == 1

    def test_n_beyond_prefix_rejected(self):
        with pytest.raises(ValueError):
            abelian_complexity(builtin_stream("tm"), 20, 10)

    def test_matches_naive_on_binary(self):
        rng = random.Random(7)
        letters = [rng.randint(0, 1) for _ in range(300)]
        stream = as_stream(binary_word(letters))
        for n in (1, 2, 3, 7, 20):
            assert abelian_complexity(stream, n, 300) == \
                naive_abelian_complexity(letters, n)

    def test_matches_naive_on_ternary(self):
        from abelianwords import Alphabet, word
        rng = random.Random(8)
        letters = [rng.choice([0, 1, 2]) for _ in range(200)]
        stream = as_stream(word(letters, Alphabet((0, 1, 2))))
        for n in (1, 2, 5, 11):
            assert abelian_complexity(stream, n, 200) == \
                naive_abelian_complexity(letters, n)

    def test_monotone_in_prefix_length(self):
        tm = builtin_stream("tm")
        for n in (3, 8, 17):
            values = [abelian_complexity(tm, n, p) for p in (64, 256, 1024, 4096)]
            assert values == sorted(values)

    def test_binary_spread_link(self):
        # for a binary word the distinct classes of a scan are exactly the
        # one-count range, because sliding a window changes the count by at
        # most one
        rng = random.Random(9)
        letters = [rng.randint(0, 1) for _ in range(400)]
        stream = as_stream(binary_word(letters))
        for n in (2, 5, 16):
            ones = [sum(letters[i:i + n]) for i in range(400 - n + 1)]
            assert abelian_complexity(stream, n, 400) == max(ones) - min(ones) + 1

    def test_profile_rows(self):
        prof = complexity_profile(builtin_stream("tm"), 4, 256)
        assert prof.rows() == [(1, 2), (2, 3), (3, 2), (4, 3)]


class TestSubwordComplexity:
    def test_tm_first_values(self):
        from abelianwords import subword_complexity
        tm = builtin_stream("tm")
        got = [subword_complexity(tm, n, 2 ** 12) for n in range(1, 5)]
        assert got == [2, 4, 6, 10]

    def test_matches_string_enumeration(self):
        from abelianwords import subword_complexity
        rng = random.Random(11)
        letters = [rng.randint(0, 1) for _ in range(200)]
        stream = as_stream(binary_word(letters))
        text = "".join(map(str, letters))
        for n in (1, 3, 9):
            distinct = {text[i:i + n] for i in range(len(text) - n + 1)}
            assert subword_complexity(stream, n, 200) == len(distinct)

    def test_at_least_abelian(self):
        from abelianwords import subword_complexity
        tm = builtin_stream("tm")
        for n in (2, 6, 12):
            assert subword_complexity(tm, n, 2048) >= \
                abelian_complexity(tm, n, 2048)


class TestBoundedComplexityBalanceLink:
    def test_bounded_words_have_stable_balance(self):
        # bounded distinct-class counts go hand in hand with a balance
        # constant that stops growing as the window widens
        for name, rho_cap, c_value in (("tm", 3, 2), ("fib", 2, 1), ("g_fp", 5, 4)):
            prof = complexity_profile(builtin_stream(name), 128, 2 ** 13)
            assert max(prof.values.values()) == rho_cap
            assert balance(builtin_stream(name), 64, 2 ** 13).c == c_value
            assert balance(builtin_stream(name), 256, 2 ** 13).c == c_value

    def test_growing_blocks_word_diverges_both_ways(self):
        ps = builtin_stream("pow_seq")
        assert abelian_complexity(ps, 64, 2 ** 13) < \
            abelian_complexity(ps, 256, 2 ** 13)
        assert balance(builtin_stream("pow_seq"), 32, 2 ** 13).c < \
            balance(builtin_stream("pow_seq"), 256, 2 ** 13).c


class TestBalance:
    def test_fibonacci_is_balanced(self):
        assert balance(builtin_stream("fib"), 200, 4096).c == 1

    def test_tm(self):
        assert balance(builtin_stream("tm"), 200, 4096).c == 2

    def test_constant_word(self):
        constant = PeriodicStream(BINARY, (0,))
        assert balance(constant, 50, 500).c == 0

    def test_witness_achieves_spread(self):
        report = balance(builtin_stream("tm"), 64, 2048)
        w = report.witness
        stream = builtin_stream("tm")
        idx = stream.factor_index(2048)
        col = stream.alphabet.index(w.letter)
        hi = idx.parikh(w.max_position, w.max_position + w.n)[col]
        lo = idx.parikh(w.min_position, w.min_position + w.n)[col]
        assert hi - lo == report.c == w.spread


class TestShortestPower:
    def test_tm_square_at_start(self):
        w = shortest_abelian_power_at(builtin_stream("tm"), 0, 2, 10)
        assert w.period == 2

    def test_tm_cube_at_seven_matches_naive(self):
        tm = builtin_stream("tm")
        tm.ensure(7 + 3 * 64)
        naive = naive_shortest_power(tm._buf, 7, 3, 64)
        fast = shortest_abelian_power_at(tm, 7, 3, 64)
        assert naive == fast.period
        assert fast.period >= 4

    def test_prepended_tm_has_no_cube_prefix(self):
        assert shortest_abelian_power_at(builtin_stream("0tm"), 0, 3, 1000) is None

    def test_rejects_small_exponent(self):
        with pytest.raises(ValueError):
            shortest_abelian_power_at(builtin_stream("tm"), 0, 1, 5)

    def test_agrees_with_naive_oracle(self):
        rng = random.Random(123)
        for _ in range(100):
            length = rng.randint(30, 120)
            letters = [rng.randint(0, 1) for _ in range(length)]
            pos = rng.randint(0, length - 2)
            k = rng.randint(2, 3)
            cap = (length - pos) // k
            stream = as_stream(binary_word(letters))
            fast = shortest_abelian_power_at(stream, pos, k, cap) if cap else None
            naive = naive_shortest_power(letters, pos, k, cap)
            assert (fast.period if fast else None) == naive

    def test_higher_power_implies_lower(self):
        rng = random.Random(42)
        for _ in range(50):
            letters = [rng.randint(0, 1) for _ in range(90)]
            stream = as_stream(binary_word(letters))
            w = shortest_abelian_power_at(stream, 0, 3, 30)
            if w is not None:
                shorter = AbelianPowerWitness(position=0, k=2, period=w.period)
                assert verify_power(stream, shorter)

    def test_verify_power_rejects_false_witness(self):
        stream = as_stream(binary_word("0110011000"))
        assert not verify_power(stream, AbelianPowerWitness(0, 2, 1))


class TestAvoidance:
    def test_g_fixed_point_start(self):
        assert avoids_abelian_squares_at(builtin_stream("g_fp"), 0, 10 ** 4)

    def test_g_fixed_point_position_one(self):
        g_fp = builtin_stream("g_fp")
        assert not avoids_abelian_squares_at(g_fp, 1, 100)
        assert shortest_abelian_power_at(g_fp, 1, 2, 100).period == 1

    def test_image_suffix_position(self):
        # start of the first suffix image plus its 4-letter marker
        assert avoids_abelian_squares_at(builtin_stream("f_wh"), 14, 1000)

    def test_marker_itself_starts_a_square(self):
        w = shortest_abelian_power_at(builtin_stream("f_wh"), 10, 2, 10)
        assert w.period == 1


class TestRepetitivity:
    def test_tm_2_repetitive_at_10(self):
        assert everywhere_k_repetitive(builtin_stream("tm"), 2, 10, 2048)

    def test_fib_2_repetitive_at_10(self):
        assert everywhere_k_repetitive(builtin_stream("fib"), 2, 10, 2048)

    def test_tm_not_3_repetitive(self):
        report = everywhere_k_repetitive(builtin_stream("tm"), 3, 30, 2048)
        assert not report
        # the witness factor genuinely lacks an Abelian cube prefix
        letters = list(report.witness_factor.letters)
        assert naive_shortest_power(letters, 0, 3, 10) is None

    def test_window_shorter_than_power(self):
        # no k-power fits in a window below k letters
        report = everywhere_k_repetitive(builtin_stream("tm"), 3, 2, 64)
        assert not report


class TestRecurrence:
    def test_tm_single_letters(self):
        assert recurrence_gap(builtin_stream("tm"), 1, 4096).max_gap == 3

    def test_periodic_word(self):
        assert recurrence_gap(PeriodicStream(BINARY, (0, 1)), 2, 64).max_gap == 2

    def test_wh_window_four(self):
        report = recurrence_gap(builtin_stream("w_h"), 4, 2 ** 14)
        assert report.max_gap == 72
        assert report.singletons == 0

    def test_singletons_counted(self):
        stream = as_stream(binary_word("00010000"))
        report = recurrence_gap(stream, 3, 8)
        # factors 001, 010, 100 occur once each; 000 recurs at 0, 4, 5
        assert report.singletons == 3
        assert report.max_gap == 4


class TestOverlapFree:
    def test_short_examples(self):
        assert is_overlap_free(binary_word("010"))
        assert not is_overlap_free(binary_word("000"))

    def test_tm_prefixes(self):
        tm = builtin_stream("tm")
        assert is_overlap_free(tm.prefix(64))
        assert is_overlap_free(binary_word("01101001100101101001011001101001"))

    def test_with_gap_block(self):
        # 0 11 0 11 0 is an overlap with a two-letter middle block
        assert not is_overlap_free(binary_word("011011 0".replace(" ", "")))

    @given(st.lists(st.integers(0, 1), max_size=14))
    @settings(max_examples=200)
    def test_matches_quadratic_oracle(self, letters):
        def oracle(ls):
            n = len(ls)
            for p in range(1, n):
                for i in range(n - 2 * p):
                    if all(ls[i + t] == ls[i + t + p] for t in range(p + 1)):
                        return False
            return True

        assert is_overlap_free(binary_word(letters)) == oracle(letters)


class TestDensity:
    def test_examples(self):
        ps = PositionSet((10, 80, 640, 5120), horizon=10 ** 5,
                         period_bounds=(0, 0, 0, 0))
        assert density(ps) == Fraction(4, 10 ** 5)

    def test_empty(self):
        assert density(PositionSet((), horizon=10, period_bounds=())) == 0

    def test_full(self):
        ps = PositionSet(tuple(range(10)), horizon=10, period_bounds=(0,) * 10)
        assert density(ps) == 1

    def test_validation(self):
        with pytest.raises(ValueError):
            PositionSet((3, 2), horizon=10, period_bounds=(0, 0))
        with pytest.raises(ValueError):
            PositionSet((11,), horizon=10, period_bounds=(0,))
        with pytest.raises(ValueError):
            PositionSet((1,), horizon=10, period_bounds=())
