"""
Shared fixtures for the test suite.
"""
from pathlib import Path

import pytest

from core.bitcore import RandomSource
from core.logger import Logger
from codes.gray import GrayCodec
from codes.repetition import PairTripleCodec, RepetitionCodec
from linear.codec import LinearCodec
from linear.matrix import GeneratorMatrix

DATA_DIR = Path(__file__).parent / 'test_data'


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def rng() -> RandomSource:
    return RandomSource(12345)


@pytest.fixture
def rep3() -> RepetitionCodec:
    return RepetitionCodec(3)


@pytest.fixture
def pair_triple() -> PairTripleCodec:
    return PairTripleCodec()


@pytest.fixture
def pair_triple_gray(pair_triple) -> GrayCodec:
    return GrayCodec(pair_triple)


@pytest.fixture
def small_generator() -> GeneratorMatrix:
    """r1 = 101, r2 = 011."""
    return GeneratorMatrix.from_strings(['101', '011'])


@pytest.fixture
def pair_triple_linear() -> LinearCodec:
    return LinearCodec(GeneratorMatrix.from_strings(['000111', '111000']))


@pytest.fixture
def fresh_logger():
    """Reset the shared logger around tests that call main()."""
    Logger.reset()
    yield
    Logger.reset()
