"""
Bit-string primitives, Hamming arithmetic and the binary symmetric channel.

Bits are indexed 1..len from the left, so bit 1 is the first character of the
text form and the most significant bit of the packed integer.
"""
import hashlib
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Tuple

import numpy as np


class BitString:
    """Immutable fixed-length bit sequence packed into a Python int."""

    __slots__ = ('_length', '_value')

    def __init__(self, length: int, value: int = 0):
        """
        Initialize a bit string.

        Args:
            length: Number of bits
            value: Packed bits, bit 1 being the most significant of `length` bits

        Raises:
            ValueError: If length is negative or value does not fit
        """
        if length < 0:
            raise ValueError(f"BitString length must be non-negative, got {length}")
        if value < 0 or value >> length:
            raise ValueError(f"value {value} does not fit in {length} bits")
        self._length = length
        self._value = value

    @classmethod
    def from_str(cls, text: str) -> 'BitString':
        """Parse the ASCII '0'/'1' text form."""
        text = text.strip()
        if any(ch not in '01' for ch in text):
            raise ValueError(f"not a bit string: {text!r}")
        return cls(len(text), int(text, 2) if text else 0)

    @classmethod
    def zeros(cls, length: int) -> 'BitString':
        return cls(length, 0)

    @classmethod
    def ones(cls, length: int) -> 'BitString':
        return cls(length, (1 << length) - 1)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> 'BitString':
        """Build from an iterable of 0/1 values, first bit first."""
        value = 0
        length = 0
        for bit in bits:
            value = (value << 1) | (1 if bit else 0)
            length += 1
        return cls(length, value)

    @classmethod
    def from_array(cls, array: np.ndarray) -> 'BitString':
        """Build from a 1-D numpy array of 0/1 values."""
        array = np.asarray(array, dtype=np.uint8).ravel()
        length = array.size
        if length == 0:
            return cls(0, 0)
        packed = np.packbits(array)
        pad = packed.size * 8 - length
        return cls(length, int.from_bytes(packed.tobytes(), 'big') >> pad)

    def to_array(self) -> np.ndarray:
        """Return the bits as a uint8 numpy array, first bit at index 0."""
        if self._length == 0:
            return np.zeros(0, dtype=np.uint8)
        nbytes = (self._length + 7) // 8
        pad = nbytes * 8 - self._length
        raw = np.frombuffer((self._value << pad).to_bytes(nbytes, 'big'), dtype=np.uint8)
        return np.unpackbits(raw)[:self._length]

    @property
    def value(self) -> int:
        """Packed integer form."""
        return self._value

    def bit(self, i: int) -> int:
        """
        Read bit i (1-based).

        Raises:
            ValueError: If i is outside 1..len
        """
        if not 1 <= i <= self._length:
            raise ValueError(f"bit index {i} outside 1..{self._length}")
        return (self._value >> (self._length - i)) & 1

    def weight(self) -> int:
        """Number of one bits."""
        return self._value.bit_count()

    def with_bit(self, i: int, bit: int) -> 'BitString':
        """Return a copy with bit i (1-based) set to `bit`."""
        if not 1 <= i <= self._length:
            raise ValueError(f"bit index {i} outside 1..{self._length}")
        mask = 1 << (self._length - i)
        value = (self._value | mask) if bit else (self._value & ~mask)
        return BitString(self._length, value)

    def flip(self, i: int) -> 'BitString':
        """Return a copy with bit i (1-based) inverted."""
        if not 1 <= i <= self._length:
            raise ValueError(f"bit index {i} outside 1..{self._length}")
        return BitString(self._length, self._value ^ (1 << (self._length - i)))

    def __len__(self) -> int:
        return self._length

    def __iter__(self):
        for i in range(1, self._length + 1):
            yield (self._value >> (self._length - i)) & 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitString):
            return NotImplemented
        return self._length == other._length and self._value == other._value

    def __hash__(self) -> int:
        return hash((self._length, self._value))

    def __str__(self) -> str:
        if self._length == 0:
            return ''
        return format(self._value, f'0{self._length}b')

    def __repr__(self) -> str:
        return f"BitString('{self}')"


def _check_same_length(a: BitString, b: BitString):
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} != {len(b)}")


def hamming(a: BitString, b: BitString) -> int:
    """
    Number of positions where two equal-length bit strings differ.

    Raises:
        ValueError: On length mismatch
    """
    _check_same_length(a, b)
    return (a.value ^ b.value).bit_count()


def concat(*parts: BitString) -> BitString:
    """Concatenate bit strings left to right."""
    length = 0
    value = 0
    for part in parts:
        value = (value << len(part)) | part.value
        length += len(part)
    return BitString(length, value)


def complement(a: BitString) -> BitString:
    """Bitwise inverse."""
    return BitString(len(a), a.value ^ ((1 << len(a)) - 1))


def xor(a: BitString, b: BitString) -> BitString:
    """Bitwise exclusive or of equal-length strings."""
    _check_same_length(a, b)
    return BitString(len(a), a.value ^ b.value)


def prefix(a: BitString, i: int) -> BitString:
    """First i bits of a."""
    if not 0 <= i <= len(a):
        raise ValueError(f"prefix length {i} outside 0..{len(a)}")
    return BitString(i, a.value >> (len(a) - i))


def suffix(a: BitString, i: int) -> BitString:
    """Last i bits of a."""
    if not 0 <= i <= len(a):
        raise ValueError(f"suffix length {i} outside 0..{len(a)}")
    return BitString(i, a.value & ((1 << i) - 1))


def diff_positions(a: BitString, b: BitString) -> Tuple[int, ...]:
    """Sorted 1-based indices where a and b differ."""
    _check_same_length(a, b)
    length = len(a)
    delta = a.value ^ b.value
    positions = []
    while delta:
        low = delta & -delta
        positions.append(length - low.bit_length() + 1)
        delta ^= low
    return tuple(sorted(positions))


@dataclass(frozen=True)
class NoiseModel:
    """Binary symmetric channel flipping each bit independently with probability p."""

    p: float

    def __post_init__(self):
        if not 0 <= self.p < 0.5:
            raise ValueError(f"flip probability must lie in [0, 1/2), got {self.p}")


def _label_key(label) -> int:
    digest = hashlib.blake2b(str(label).encode('utf-8'), digest_size=4).digest()
    return int.from_bytes(digest, 'big')


class RandomSource:
    """
    Seeded, splittable random stream.

    A source owns one numpy Generator. Children are derived through
    SeedSequence spawn keys built from labels, so `split("trial", 7)` yields
    the same stream in every run regardless of what the parent consumed.
    """

    def __init__(self, seed: int, spawn_key: Sequence[int] = ()):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self.spawn_key = tuple(spawn_key)
        sequence = np.random.SeedSequence(entropy=self.seed, spawn_key=self.spawn_key)
        self.generator = np.random.Generator(np.random.PCG64(sequence))

    def split(self, *labels) -> 'RandomSource':
        """Derive an independent child stream identified by labels."""
        key = self.spawn_key + tuple(_label_key(label) for label in labels)
        return RandomSource(self.seed, key)

    def bernoulli(self, p: float, size) -> np.ndarray:
        """Array of independent 0/1 draws with P[1] = p."""
        return (self.generator.random(size) < p).astype(np.uint8)

    def integers(self, low: int, high: int, size=None):
        return self.generator.integers(low, high, size=size)

    def uniform(self, size=None):
        return self.generator.random(size)

    def choice(self, options: Sequence[int]) -> int:
        return options[int(self.generator.integers(0, len(options)))]

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed}, spawn_key={self.spawn_key})"


_tie_stream: ContextVar[Optional[RandomSource]] = ContextVar('tie_stream', default=None)


@contextmanager
def tie_stream(rng: RandomSource) -> Iterator[RandomSource]:
    """Route random tie-breaks in the current thread to rng until the block exits."""
    token = _tie_stream.set(rng)
    try:
        yield rng
    finally:
        _tie_stream.reset(token)


def current_tie_stream(default: RandomSource) -> RandomSource:
    """The stream bound by tie_stream in this thread, else default."""
    bound = _tie_stream.get()
    return default if bound is None else bound


def bsc_apply(c: BitString, noise: NoiseModel, rng: RandomSource) -> BitString:
    """
    Send c through the binary symmetric channel.

    Args:
        c: Transmitted codeword
        noise: Channel flip probability
        rng: Randomness for the error vector

    Returns:
        c xor b with b ~ Bern(p)^len(c)
    """
    if noise.p == 0 or len(c) == 0:
        return c
    error = BitString.from_array(rng.bernoulli(noise.p, len(c)))
    return xor(c, error)
