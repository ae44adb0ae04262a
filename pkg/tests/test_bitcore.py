"""
Tests for bit strings, Hamming arithmetic, the channel and random streams.
"""
import numpy as np
import pytest
from hypothesis import given, strategies as st

from core.bitcore import (BitString, NoiseModel, RandomSource, bsc_apply, complement, concat,
                          diff_positions, hamming, prefix, suffix, xor)

bit_text = st.text(alphabet='01', min_size=1, max_size=80)


def bs(text: str) -> BitString:
    return BitString.from_str(text)


class TestBitString:

    def test_text_form_roundtrip(self):
        assert str(bs('0010110')) == '0010110'
        assert len(bs('0010110')) == 7

    def test_bit_one_is_leftmost(self):
        word = bs('1000')
        assert word.bit(1) == 1
        assert word.bit(4) == 0
        assert word.value == 8

    def test_bit_index_out_of_range(self):
        with pytest.raises(ValueError):
            bs('101').bit(0)
        with pytest.raises(ValueError):
            bs('101').bit(4)

    def test_rejects_non_binary_text(self):
        with pytest.raises(ValueError):
            BitString.from_str('0120')

    def test_value_must_fit(self):
        with pytest.raises(ValueError):
            BitString(3, 8)

    def test_flip_and_with_bit(self):
        word = bs('0000')
        assert str(word.flip(2)) == '0100'
        assert str(word.with_bit(4, 1)) == '0001'
        assert str(bs('1111').with_bit(1, 0)) == '0111'

    def test_empty_string(self):
        empty = BitString.from_str('')
        assert len(empty) == 0
        assert str(empty) == ''
        assert empty.to_array().size == 0

    @given(bit_text)
    def test_array_roundtrip(self, text):
        word = bs(text)
        array = word.to_array()
        assert ''.join(str(int(b)) for b in array) == text
        assert BitString.from_array(array) == word

    @given(bit_text)
    def test_iteration_matches_bits(self, text):
        assert list(bs(text)) == [int(ch) for ch in text]


class TestHamming:

    def test_examples(self):
        assert hamming(bs('000111'), bs('111000')) == 6
        assert hamming(bs('10100'), bs('11100')) == 1

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            hamming(bs('01'), bs('011'))

    def test_xor_example(self):
        assert str(xor(bs('1010'), bs('0110'))) == '1100'

    def test_prefix_and_suffix_examples(self):
        assert str(prefix(bs('000111'), 0)) == ''
        assert str(suffix(bs('000111'), 3)) == '111'
        assert str(prefix(bs('000111'), 4)) == '0001'

    def test_prefix_out_of_range(self):
        with pytest.raises(ValueError):
            prefix(bs('01'), 3)

    def test_concat_and_complement(self):
        assert str(concat(bs('10'), BitString.zeros(2), bs('1'))) == '10001'
        assert str(complement(bs('1100'))) == '0011'

    def test_diff_positions(self):
        assert diff_positions(bs('000111'), bs('010110')) == (2, 6)

    @given(st.data())
    def test_hamming_is_weight_of_xor(self, data):
        a = data.draw(bit_text)
        b = data.draw(st.text(alphabet='01', min_size=len(a), max_size=len(a)))
        x, y = bs(a), bs(b)
        assert hamming(x, y) == xor(x, y).weight() == len(diff_positions(x, y))
        assert hamming(x, y) == hamming(y, x)

    @given(st.data())
    def test_triangle_inequality(self, data):
        a = data.draw(bit_text)
        same_length = st.text(alphabet='01', min_size=len(a), max_size=len(a))
        x, y, z = bs(a), bs(data.draw(same_length)), bs(data.draw(same_length))
        assert hamming(x, z) <= hamming(x, y) + hamming(y, z)

    @given(bit_text)
    def test_complement_is_an_involution(self, text):
        word = bs(text)
        assert complement(complement(word)) == word
        assert hamming(word, complement(word)) == len(word)

    @given(bit_text)
    def test_xor_with_itself_is_zero(self, text):
        word = bs(text)
        assert xor(word, word) == BitString.zeros(len(word))
        assert xor(word, BitString.zeros(len(word))) == word


class TestNoiseAndRandomness:

    @pytest.mark.parametrize('p', [-0.1, 0.5, 0.7])
    def test_noise_model_rejects_bad_p(self, p):
        with pytest.raises(ValueError):
            NoiseModel(p)

    def test_zero_noise_is_identity(self, rng):
        word = bs('0110101')
        assert bsc_apply(word, NoiseModel(0.0), rng) == word

    def test_split_is_independent_of_parent_consumption(self):
        a = RandomSource(7)
        b = RandomSource(7)
        a.uniform(100)
        assert np.array_equal(a.split('trial', 3).uniform(5), b.split('trial', 3).uniform(5))

    def test_distinct_labels_give_distinct_streams(self):
        source = RandomSource(7)
        assert not np.array_equal(source.split('x').uniform(8), source.split('y').uniform(8))
        assert not np.array_equal(source.split('x', 1).uniform(8), source.split('x', 2).uniform(8))

    def test_channel_flip_rate(self):
        rng = RandomSource(99)
        word = BitString.zeros(1000)
        flips = sum(bsc_apply(word, NoiseModel(0.1), rng.split('t', k)).weight() for k in range(50))
        # 50000 Bernoulli(0.1) draws: mean 5000, sd ~67
        assert 4700 < flips < 5300

    def test_flip_rate_within_three_standard_errors(self):
        rng = RandomSource(2024)
        noise = NoiseModel(0.1)
        word = BitString.zeros(10)
        trials = 10000
        flips = sum(bsc_apply(word, noise, rng).weight() for _ in range(trials))
        draws = trials * len(word)
        stderr = (noise.p * (1 - noise.p) / draws) ** 0.5
        assert abs(flips / draws - noise.p) <= 3 * stderr
