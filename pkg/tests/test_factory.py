"""
Tests for codec descriptors and the codec factory.
"""
import pytest

from core.bitcore import RandomSource
from codes.base import TieBreakPolicy
from codes.complement import ComplementCodec
from codes.factory import CodecFactory, DescriptorError, blockrep_as_linear, parse_descriptor
from codes.gray import GrayCodec
from codes.repetition import BlockRepetitionCodec, PairTripleCodec
from codes.unary import UnaryCodec
from linear.codec import LinearCodec
from linear.expander import ExpanderCodec
from linear.lgray import LinearGrayCodec, RepeatCodec


class TestParseDescriptor:

    def test_flat(self):
        assert parse_descriptor('unary:m=5') == {'kind': 'unary', 'm': 5}

    def test_nested(self):
        assert parse_descriptor('gray:inner=(blockrep:bits=2,reps=3),ties=smallest') == {
            'kind': 'gray',
            'inner': {'kind': 'blockrep', 'bits': 2, 'reps': 3},
            'ties': 'smallest',
        }

    def test_bare_inner_kind(self):
        assert parse_descriptor('complement:inner=pairtriple') == {
            'kind': 'complement', 'inner': {'kind': 'pairtriple'}}

    def test_rows_stay_text(self):
        assert parse_descriptor('linear:rows=011/101')['rows'] == '011/101'

    def test_floats(self):
        assert parse_descriptor('expander:d=256,alpha=0.1')['alpha'] == 0.1

    @pytest.mark.parametrize('text', ['', ':m=5', 'unary:m', 'gray:inner=(unary:m=3',
                                      'gray:inner=unary:m=3)'])
    def test_malformed(self, text):
        with pytest.raises(DescriptorError):
            parse_descriptor(text)


class TestCodecFactory:

    def test_supported_kinds(self):
        kinds = CodecFactory.get_supported_kinds()
        assert {'unary', 'gray', 'linear', 'lgray', 'expander'} <= set(kinds)
        assert CodecFactory.is_supported('ccd')
        assert not CodecFactory.is_supported('hamming')

    def test_unknown_kind(self):
        with pytest.raises(DescriptorError, match='unknown codec kind'):
            CodecFactory.create('hamming:n=7')

    def test_missing_parameter(self):
        with pytest.raises(DescriptorError):
            CodecFactory.create('unary')

    def test_simple_codecs(self):
        assert isinstance(CodecFactory.create('unary:m=5'), UnaryCodec)
        assert CodecFactory.create('repetition:d=5').distance == 5
        assert isinstance(CodecFactory.create('pairtriple'), PairTripleCodec)
        assert isinstance(CodecFactory.create('complement:inner=pairtriple'), ComplementCodec)

    def test_gray_over_pair_triple(self):
        codec = CodecFactory.create('gray:inner=pairtriple')
        assert isinstance(codec, GrayCodec)
        assert (codec.m, codec.d) == (54, 30)

    def test_linear_rows(self):
        codec = CodecFactory.create('linear:rows=101/011')
        assert isinstance(codec, LinearCodec)
        assert str(codec.encode(1)) == '101'
        assert codec.distance == 2

    def test_lgray_accepts_block_repetition(self):
        codec = CodecFactory.create('lgray:inner=pairtriple')
        assert isinstance(codec, LinearGrayCodec)
        assert codec.encode(0).weight() == 0

    def test_lgray_rejects_nonlinear_inner(self):
        with pytest.raises(DescriptorError):
            CodecFactory.create('lgray:inner=(unary:m=4)')

    def test_repeat3(self):
        codec = CodecFactory.create('repeat3:inner=(linear:rows=101/011)')
        assert isinstance(codec, RepeatCodec)
        assert codec.d == 9

    def test_yaml_with_matrix_file(self, data_dir):
        codec = CodecFactory.create(str(data_dir / 'gray_pair_triple.yaml'))
        assert isinstance(codec, GrayCodec)
        assert codec.m == 54
        assert codec.encode(0).weight() == 0

    def test_yaml_with_rows(self, data_dir):
        codec = CodecFactory.create(str(data_dir / 'lgray_rows.yaml'))
        assert isinstance(codec, LinearGrayCodec)
        assert codec.m == 18

    def test_missing_yaml(self, tmp_path):
        with pytest.raises(DescriptorError):
            CodecFactory.create(str(tmp_path / 'missing.yaml'))

    def test_random_ties_need_rng(self):
        with pytest.raises(DescriptorError):
            CodecFactory.create('unary:m=5,ties=random')
        codec = CodecFactory.create('unary:m=5,ties=random', RandomSource(1))
        assert codec.ties.mode == 'random'

    def test_expander(self):
        codec = CodecFactory.create('expander:d=64,alpha=0.1,graph_seed=3')
        assert isinstance(codec, ExpanderCodec)
        assert codec.d == 64

    def test_expander_unknown_parameter(self):
        with pytest.raises(DescriptorError):
            CodecFactory.create('expander:d=64,depth=2')

    def test_describe_rebuilds_codec(self):
        factory = CodecFactory()
        for text in ('gray:inner=pairtriple', 'complement:inner=(repetition:d=3)',
                     'lgray:inner=(linear:rows=101/011)', 'ccd:inner=(blockrep:bits=2,reps=2)'):
            codec = CodecFactory.create(text)
            rebuilt = factory.build(codec.describe())
            assert rebuilt.describe() == codec.describe()
            assert all(rebuilt.encode(v) == codec.encode(v) for v in range(codec.m))

    def test_blockrep_as_linear(self):
        block = BlockRepetitionCodec(2, 3)
        linear = blockrep_as_linear(block)
        assert all(linear.encode(v) == block.encode(v) for v in range(4))
        assert linear.distance == 3


def test_tie_policy_choice_is_a_candidate():
    policy = TieBreakPolicy('random', RandomSource(3))
    assert all(policy.choose([4, 2, 9]) in (2, 4, 9) for _ in range(20))


def test_expander_defaults_fill_missing_parameters():
    codec = CodecFactory.create('expander:graph_seed=3', expander_defaults={'d': 64, 'alpha': 0.1})
    assert codec.d == 64
    explicit = CodecFactory.create('expander:d=64,alpha=0.1,graph_seed=3')
    assert all(codec.encode(v) == explicit.encode(v) for v in (0, 1, 5))
