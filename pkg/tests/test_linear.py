"""
Tests for GF(2) linear codes, codeword counting and the three-copy Gray code.
"""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from core.bitcore import BitString, concat, hamming
from codes.base import BudgetExceededError
from linear import gf2
from linear.codec import LinearCodec, exact_distance, linear_encode, ml_decode
from linear.counting import brute_force_count, count_codewords, find_block
from linear.lgray import (LinearGrayCodec, LinearGrayLayout, RepeatCodec, lgray_decode,
                          lgray_encode, w_decode, w_encode)
from linear.matrix import (GeneratorMatrix, parse_matrix_text, read_generator,
                           write_matrix)


def bs(text: str) -> BitString:
    return BitString.from_str(text)


def random_generator(seed: int, n: int, d: int) -> GeneratorMatrix:
    """Full-rank n x d generator drawn from a fixed seed."""
    source = np.random.default_rng(seed)
    while True:
        rows = source.integers(0, 2, size=(n, d), dtype=np.uint8)
        if gf2.rank(rows) == n:
            return GeneratorMatrix(rows)


class TestGF2:

    def test_rank(self):
        assert gf2.rank(np.array([[1, 0, 1], [0, 1, 1], [1, 1, 0]], dtype=np.uint8)) == 2

    def test_inverse(self):
        matrix = np.array([[1, 1], [0, 1]], dtype=np.uint8)
        product = (matrix @ gf2.inverse(matrix)) % 2
        assert np.array_equal(product, np.eye(2, dtype=np.uint8))

    def test_singular_inverse(self):
        with pytest.raises(ValueError):
            gf2.inverse(np.array([[1, 1], [1, 1]], dtype=np.uint8))

    def test_parity_checks_annihilate_generator(self):
        generator = random_generator(4, 4, 10).rows
        parity = gf2.parity_from_generator(generator)
        assert parity.shape == (6, 10)
        assert not ((generator.astype(np.int64) @ parity.T.astype(np.int64)) % 2).any()


class TestGeneratorMatrix:

    def test_rows(self, small_generator):
        assert (small_generator.n, small_generator.d) == (2, 3)
        assert str(small_generator.row(1)) == '101'
        assert small_generator.to_strings() == ['101', '011']

    def test_dependent_rows_rejected(self):
        with pytest.raises(ValueError):
            GeneratorMatrix.from_strings(['101', '011', '110'])

    def test_read_file_with_comment(self, data_dir, small_generator):
        assert read_generator(data_dir / 'small_generator.txt') == small_generator

    @pytest.mark.parametrize('text', ['', '2\n101\n011\n', '2 3\n101\n', '2 3\n101\n0a1\n',
                                      '2 3\n101\n0111\n'])
    def test_malformed_text(self, text):
        with pytest.raises(ValueError):
            parse_matrix_text(text)

    def test_write_and_read(self, tmp_path):
        generator = random_generator(11, 3, 7)
        path = tmp_path / 'nested' / 'g.txt'
        write_matrix(generator.rows, path)
        assert read_generator(path) == generator
        assert path.read_text().splitlines()[0] == '3 7'


class TestLinearCodec:

    def test_encode_is_row_xor(self, small_generator):
        code = LinearCodec(small_generator)
        assert [str(linear_encode(code, v)) for v in range(4)] == ['000', '101', '011', '110']

    def test_ml_examples(self, small_generator):
        code = LinearCodec(small_generator)
        assert ml_decode(code, bs('111')) == 1
        assert ml_decode(code, bs('100')) == 0

    def test_exact_distance(self, small_generator, pair_triple_linear):
        assert exact_distance(LinearCodec(GeneratorMatrix.from_strings(['111']))) == 3
        assert exact_distance(LinearCodec(small_generator)) == 2
        assert exact_distance(pair_triple_linear) == 3
        assert pair_triple_linear.distance == 3

    def test_pair_triple_matches_repetition(self, pair_triple_linear, pair_triple):
        for v in range(4):
            assert pair_triple_linear.encode(v) == pair_triple.encode(v)

    def test_syndrome_corrects_single_errors(self):
        generator = GeneratorMatrix.from_strings(['000111', '111000'])
        ml = LinearCodec(generator, decoder='ml')
        syndrome = LinearCodec(generator, decoder='syndrome')
        for v in range(4):
            word = ml.encode(v)
            assert syndrome.decode(word) == v
            for i in range(1, 7):
                assert syndrome.decode(word.flip(i)) == ml.decode(word.flip(i)) == v

    def test_syndrome_is_nearest_codeword(self):
        code = LinearCodec(random_generator(3, 3, 8), decoder='syndrome')
        for value in range(1 << 8):
            word = BitString(8, value)
            decoded = code.encode(code.decode(word))
            nearest = min(hamming(code.encode(v), word) for v in range(code.m))
            assert hamming(decoded, word) == nearest

    def test_message_of(self):
        code = LinearCodec(random_generator(8, 5, 12))
        assert all(code.message_of(code.encode(v)) == v for v in range(code.m))

    def test_budgets(self):
        with pytest.raises(BudgetExceededError):
            LinearCodec(GeneratorMatrix(np.eye(17, dtype=np.uint8)))
        with pytest.raises(BudgetExceededError):
            LinearCodec(GeneratorMatrix.from_strings(['1' * 22]), decoder='syndrome')

    def test_unknown_decoder(self, small_generator):
        with pytest.raises(ValueError):
            LinearCodec(small_generator, decoder='bitflip')

    def test_message_range(self, small_generator):
        with pytest.raises(ValueError):
            LinearCodec(small_generator).encode(4)


class TestCounting:

    def test_examples(self, small_generator):
        assert count_codewords(0, small_generator) == 0
        assert count_codewords(1, small_generator) == 2
        assert count_codewords(3, small_generator) == 6

    def test_negative_steps(self, small_generator):
        with pytest.raises(ValueError):
            count_codewords(-1, small_generator)

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_matches_brute_force(self, data):
        n = data.draw(st.integers(min_value=1, max_value=10))
        d = data.draw(st.integers(min_value=n, max_value=32))
        seed = data.draw(st.integers(min_value=0, max_value=2 ** 32 - 1))
        t = data.draw(st.integers(min_value=0, max_value=(1 << n) - 1))
        generator = random_generator(seed, n, d)
        assert count_codewords(t, generator) == brute_force_count(t, generator)

    def test_cumulative_is_strictly_increasing(self):
        generator = random_generator(21, 4, 9)
        values = [count_codewords(t, generator) for t in range(16)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_find_block_examples(self, small_generator):
        layout = LinearGrayLayout(LinearCodec(small_generator))
        assert layout.max_value == 18
        assert find_block(layout, 0) == (0, 0)
        assert find_block(layout, 7) == (1, 1)
        assert find_block(layout, 17) == (2, 5)

    def test_find_block_range(self, small_generator):
        layout = LinearGrayLayout(LinearCodec(small_generator))
        with pytest.raises(ValueError):
            find_block(layout, 18)
        with pytest.raises(ValueError):
            find_block(layout, -1)

    def test_find_block_covers_every_value(self):
        layout = LinearGrayLayout(LinearCodec(random_generator(21, 4, 9)))
        for v in range(layout.max_value):
            l, r = find_block(layout, v)
            assert layout.start(l) <= v < layout.start(l + 1)
            assert r == v - layout.start(l)


class TestRepeat:

    def test_median_of_component_decodes(self):
        code = LinearCodec(GeneratorMatrix.from_strings(['001', '010', '100']))
        word = concat(code.encode(5), code.encode(2), code.encode(3))
        assert RepeatCodec(code).component_decodes(word) == [5, 2, 3]
        assert w_decode(code, word) == 3

    def test_parameters(self, small_generator):
        repeat = RepeatCodec(LinearCodec(small_generator))
        assert (repeat.m, repeat.d, repeat.distance) == (4, 9, 6)
        assert str(w_encode(LinearCodec(small_generator), 1)) == '101101101'

    def test_length_checked(self, small_generator):
        with pytest.raises(ValueError):
            w_decode(LinearCodec(small_generator), bs('10110110'))


def check_gray_properties(codec: LinearGrayCodec):
    words = [codec.encode(v) for v in range(codec.m)]
    assert words[0].weight() == 0
    assert len(set(words)) == codec.m
    for v in range(codec.m - 1):
        assert hamming(words[v], words[v + 1]) == 1
    for v, word in enumerate(words):
        assert codec.decode(word) == v


class TestLinearGray:

    def test_small_code(self, small_generator):
        codec = LinearGrayCodec(LinearCodec(small_generator))
        assert (codec.m, codec.d) == (18, 9)
        check_gray_properties(codec)

    def test_block_starts_are_codewords(self, small_generator):
        code = LinearCodec(small_generator)
        layout = LinearGrayLayout(code)
        for l in range(code.m - 1):
            assert lgray_encode(layout, layout.start(l)) == w_encode(code, l)
            assert layout.step(l) == len(layout.diff_index(l))

    def test_diff_index_range(self, small_generator):
        layout = LinearGrayLayout(LinearCodec(small_generator))
        with pytest.raises(ValueError):
            layout.diff_index(3)

    @pytest.mark.parametrize('seed', range(20))
    def test_random_codes(self, seed):
        source = np.random.default_rng(1000 + seed)
        n = int(source.integers(1, 7))
        d = int(source.integers(n, 17))
        check_gray_properties(LinearGrayCodec(LinearCodec(random_generator(seed, n, d))))

    def test_decode_stays_in_range(self, small_generator):
        layout = LinearGrayLayout(LinearCodec(small_generator))
        for value in range(1 << 9):
            assert 0 <= lgray_decode(layout, BitString(9, value)) < 18

    def test_single_flip_decodes_close(self, small_generator):
        codec = LinearGrayCodec(LinearCodec(small_generator))
        moved_two = 0
        for v in range(codec.m):
            word = codec.encode(v)
            for i in range(1, codec.d + 1):
                received = word.flip(i)
                w = codec.decode(received)
                assert hamming(codec.encode(w), received) <= 1
                assert abs(w - v) <= 2
                moved_two += abs(w - v) == 2
        assert moved_two > 0

    def test_single_flip_tie_goes_to_smaller_value(self, small_generator):
        codec = LinearGrayCodec(LinearCodec(small_generator))
        received = codec.encode(2).flip(1)
        assert hamming(codec.encode(0), received) == hamming(codec.encode(2), received) == 1
        assert codec.decode(received) == 0
