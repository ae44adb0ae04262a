"""
Tests for the sparse parity-check code and its two decoders.
"""
import numpy as np
import pytest

from core.bitcore import BitString, RandomSource
from evaluation.experiments import expander_decoding_experiment
from linear.expander import (ExpanderConfig, SUMPRODUCT_ITERATIONS, bitflip_decode, decode_word,
                             expander_build, sample_parity, sumproduct_decode)
from linear.matrix import parse_matrix_text

SMALL = ExpanderConfig(d=256, variable_degree=3, check_degree=4, alpha=0.1, graph_seed=1)


@pytest.fixture(scope='module')
def small_code():
    return expander_build(SMALL)


class TestConfig:

    def test_defaults(self):
        config = ExpanderConfig()
        assert (config.d, config.variable_degree, config.check_degree) == (1024, 3, 4)
        assert config.check_count == 768
        assert config.decoder == 'sumproduct'
        assert config.iteration_cap == SUMPRODUCT_ITERATIONS
        assert config.cap_for('bitflip') == 10240
        assert config.channel_p == pytest.approx(0.1)
        assert config.declared_distance == 409

    @pytest.mark.parametrize('kwargs', [
        {'d': 1026},
        {'alpha': 0.3},
        {'alpha': 0.0},
        {'check_degree': 3},
        {'d': 8, 'alpha': 0.1},
        {'max_iters': 0},
        {'decoder': 'viterbi'},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            ExpanderConfig(**kwargs)


class TestGraph:

    def test_regular_degrees(self):
        parity = sample_parity(SMALL, RandomSource(SMALL.graph_seed))
        assert parity.shape == (192, 256)
        assert (parity.sum(axis=0) == 3).all()
        assert (parity.sum(axis=1) == 4).all()

    def test_build_is_deterministic(self, small_code):
        again = expander_build(SMALL)
        assert np.array_equal(small_code.parity, again.parity)
        assert small_code.generator == again.generator

    def test_generator_satisfies_checks(self, small_code):
        product = (small_code.generator.rows.astype(np.int64)
                   @ small_code.parity.T.astype(np.int64)) % 2
        assert not product.any()
        # every band sums to the all-ones row
        assert small_code.n >= SMALL.d - SMALL.check_count + SMALL.variable_degree - 1

    def test_too_many_dependent_checks(self):
        config = ExpanderConfig(d=64, alpha=0.1, rank_slack=1, max_retries=1)
        with pytest.raises(RuntimeError):
            expander_build(config)

    def test_parity_export(self, small_code, tmp_path):
        path = tmp_path / 'parity.txt'
        small_code.write_parity(path)
        assert np.array_equal(parse_matrix_text(path.read_text()), small_code.parity)


class TestBitFlip:

    def test_zero_word_is_a_codeword(self, small_code):
        assert small_code.encode(0).weight() == 0
        result = bitflip_decode(small_code, BitString.zeros(SMALL.d))
        assert result.converged and result.message == 0 and result.iterations == 0

    def test_clean_codewords(self, small_code):
        source = RandomSource(2)
        for k in range(10):
            v = int(''.join(map(str, source.split('v', k).integers(0, 2, small_code.n))), 2)
            result = bitflip_decode(small_code, small_code.encode(v))
            assert result.converged
            assert result.message == v
            assert result.iterations == 0

    def test_single_flip_repaired(self, small_code):
        columns = [tuple(col) for col in small_code.parity.T]
        repeated = {col for col in columns if columns.count(col) > 1}
        v = (1 << small_code.n) // 3
        word = small_code.encode(v)
        for i in range(1, SMALL.d + 1, 7):
            if columns[i - 1] in repeated:
                continue
            result = bitflip_decode(small_code, word.flip(i))
            assert result.converged
            assert result.message == v
            assert result.iterations == 1

    def test_iteration_cap_reported(self, small_code):
        word = BitString.zeros(SMALL.d)
        for i in (3, 60, 111, 170, 250):
            word = word.flip(i)
        result = bitflip_decode(small_code, word, max_iters=1)
        assert result.iterations == 1
        assert not result.converged

    def test_half_weight_word_returns(self, small_code):
        word = BitString(SMALL.d, ((1 << (SMALL.d // 2)) - 1) << (SMALL.d // 2))
        result = bitflip_decode(small_code, word)
        assert 0 <= result.message < small_code.m
        assert result.iterations <= SMALL.cap_for('bitflip')

    def test_word_length_checked(self, small_code):
        with pytest.raises(ValueError):
            bitflip_decode(small_code, BitString.zeros(SMALL.d - 1))


class TestSumProduct:

    def test_zero_word(self, small_code):
        result = sumproduct_decode(small_code, BitString.zeros(SMALL.d))
        assert result.converged and result.message == 0 and result.iterations == 0

    def test_clean_codewords(self, small_code):
        source = RandomSource(3)
        for k in range(10):
            v = int(''.join(map(str, source.split('v', k).integers(0, 2, small_code.n))), 2)
            result = sumproduct_decode(small_code, small_code.encode(v))
            assert result.converged and result.message == v

    def test_single_flip_repaired_in_one_round(self, small_code):
        columns = [tuple(col) for col in small_code.parity.T]
        repeated = {col for col in columns if columns.count(col) > 1}
        v = (1 << small_code.n) // 5
        word = small_code.encode(v)
        for i in range(1, SMALL.d + 1, 5):
            if columns[i - 1] in repeated:
                continue
            result = sumproduct_decode(small_code, word.flip(i))
            assert result.converged
            assert result.message == v
            assert result.iterations == 1

    def test_round_cap(self, small_code):
        word = BitString(SMALL.d, ((1 << (SMALL.d // 2)) - 1) << (SMALL.d // 2))
        result = sumproduct_decode(small_code, word, max_iters=1)
        assert result.iterations <= 1
        assert 0 <= result.message < small_code.m

    @pytest.mark.parametrize('channel_p', [0.0, 0.5])
    def test_channel_prior_checked(self, small_code, channel_p):
        with pytest.raises(ValueError):
            sumproduct_decode(small_code, BitString.zeros(SMALL.d), channel_p=channel_p)

    def test_small_code_at_its_radius(self, small_code):
        result = expander_decoding_experiment(small_code, p=SMALL.channel_p, trials=300,
                                              rng=RandomSource(4))
        assert result.success_rate >= 0.95


def test_configured_decoder_is_used():
    code = expander_build(ExpanderConfig(d=256, alpha=0.1, graph_seed=1, decoder='bitflip'))
    word = code.encode(5)
    for i in (4, 90, 200):
        word = word.flip(i)
    assert decode_word(code, word) == bitflip_decode(code, word)
    assert code.decode(word) == bitflip_decode(code, word).message
    assert code.describe()['decoder'] == 'bitflip'


@pytest.mark.slow
def test_default_code_decodes_at_half_radius():
    config = ExpanderConfig()
    code = expander_build(config)
    result = expander_decoding_experiment(code, p=config.channel_p, trials=10000,
                                          rng=RandomSource(20240521))
    assert config.channel_p == pytest.approx(0.1)
    assert result.success_rate >= 0.99
