import random

import pytest
from hypothesis import given, strategies as st

from abelianwords import (
    AbelianPowerWitness,
    BinaryExpansion,
    MU,
    binary_word,
    builtin_stream,
    cube_desubstitute,
    expansion_lemma_check,
    shortest_abelian_power_at,
    special_position_cube_period,
    suffix_kpower_witness,
    thue_morse_arithmetic_stream,
    thue_morse_stream,
    tm_letter,
    as_stream,
    verify_power,
)
from abelianwords.words import PeriodicStream, BINARY


class TestLetterRule:
    def test_first_values(self):
        assert [tm_letter(n) for n in range(8)] == [0, 1, 1, 0, 1, 0, 0, 1]

    def test_agrees_with_fixed_point(self):
        stream = thue_morse_stream()
        stream.ensure(2 ** 12)
        assert all(stream._buf[n] == tm_letter(n) for n in range(2 ** 12))

    def test_arithmetic_stream(self):
        assert thue_morse_arithmetic_stream().prefix(16) == \
            thue_morse_stream().prefix(16)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            tm_letter(-1)


class TestBinaryExpansion:
    def test_of_small(self):
        assert BinaryExpansion.of(11).bits == (1, 0, 1, 1)
        assert str(BinaryExpansion.of(4)) == "100"

    def test_positive_only(self):
        with pytest.raises(ValueError):
            BinaryExpansion.of(0)

    @given(st.integers(1, 10 ** 9))
    def test_round_trip(self, x):
        assert BinaryExpansion.of(x).value == x


class TestExpansionLemma:
    def test_example_n2_k3(self):
        ok, u = expansion_lemma_check(2, 3)
        assert ok and str(u) == "11"
        # 2**3 + 3 = 11 = 1011, 2**3 + 7 = 15 = 1111
        assert BinaryExpansion.of(11).bits == (1, 0) + u.letters
        assert BinaryExpansion.of(15).bits == (1,) + u.letters + (1,)

    def test_example_n1_k0(self):
        ok, u = expansion_lemma_check(1, 0)
        assert ok and str(u) == "0"

    def test_exhaustive_small(self):
        assert all(expansion_lemma_check(n, k)[0]
                   for n in range(1, 11) for k in range(2 ** n))

    def test_parameter_range(self):
        with pytest.raises(ValueError):
            expansion_lemma_check(0, 0)
        with pytest.raises(ValueError):
            expansion_lemma_check(2, 4)


class TestCubeDesubstitution:
    def test_constant_word(self):
        z = PeriodicStream(BINARY, (0,))
        witness = AbelianPowerWitness(position=1, k=3, period=2)
        result = cube_desubstitute(z, 1, witness)
        assert (result.block_index, result.half_period) == (0, 1)
        assert result.period == 2

    def test_even_position_rejected(self):
        z = PeriodicStream(BINARY, (0,))
        with pytest.raises(ValueError):
            cube_desubstitute(z, 2, AbelianPowerWitness(2, 3, 2))

    def test_invalid_witness_rejected(self):
        z = as_stream(binary_word("0101010101010101"))
        bad = AbelianPowerWitness(position=1, k=3, period=2)
        # doubled word of 0101... is 01 10 01 10 ...; blocks at 1 of length 2
        # are 11, 00, 11: not pairwise equivalent
        with pytest.raises(ValueError):
            cube_desubstitute(z, 1, bad)

    def test_odd_positions_have_even_periods(self):
        rng = random.Random(5)
        letters = [rng.randint(0, 1) for _ in range(600)]
        z = as_stream(binary_word(letters))
        doubled = MU(as_stream(binary_word(letters)))
        found = 0
        for pos in range(1, 400, 2):
            w = shortest_abelian_power_at(doubled, pos, 3, 60)
            if w is None:
                continue
            found += 1
            assert w.period % 2 == 0
            result = cube_desubstitute(z, pos, w)
            n, half = result.block_index, result.half_period
            assert letters[n] == letters[n + half] == letters[n + 2 * half]
        assert found > 50

    def test_tm_desubstitutes_against_itself(self):
        # the doubled image of the parity word is the parity word again
        z = thue_morse_stream()
        doubled = MU(thue_morse_stream())
        checked = 0
        for pos in range(1, 1200, 2):
            w = shortest_abelian_power_at(doubled, pos, 3, 80)
            if w is not None:
                cube_desubstitute(z, pos, w)
                checked += 1
        assert checked > 100


class TestSpecialPositions:
    def test_n1(self):
        scan = special_position_cube_period(1, 16)
        assert scan.position == 7
        assert scan.minimal_period == 6
        assert scan.bound_holds

    def test_n2(self):
        scan = special_position_cube_period(2, 32)
        assert scan.position == 15
        assert scan.minimal_period == 12
        assert scan.bound_holds

    def test_minimal_periods_recorded(self):
        got = [special_position_cube_period(n, 4 * 2 ** (n + 1)).minimal_period
               for n in range(1, 5)]
        assert got == [6, 12, 24, 38]

    def test_insufficient_cap_rejected(self):
        with pytest.raises(ValueError):
            special_position_cube_period(3, 10)


class TestSuffixWitness:
    def test_start_square(self):
        tm = builtin_stream("tm")
        w = suffix_kpower_witness(0, 2)
        assert verify_power(tm, w)
        assert shortest_abelian_power_at(tm, 0, 2, w.period).period == 2

    def test_pos5_cube(self):
        tm = builtin_stream("tm")
        w = suffix_kpower_witness(5, 3)
        assert w.position == 5 and w.k == 3
        assert verify_power(tm, w)

    def test_zero_letters_at_multiples(self):
        # k=4 gives spacing 9; six letters at multiples of 9 all vanish
        m = 9
        assert all(tm_letter(i * m) == 0 for i in range(6))

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            suffix_kpower_witness(-1, 2)
        with pytest.raises(ValueError):
            suffix_kpower_witness(0, 1)

    def test_random_positions_validate(self):
        rng = random.Random(31)
        tm = builtin_stream("tm")
        for _ in range(25):
            pos = rng.randint(0, 300)
            k = rng.randint(2, 5)
            w = suffix_kpower_witness(pos, k)
            assert verify_power(tm, w)
