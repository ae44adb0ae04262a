"""
Base codec class for the error-correcting code constructions.
"""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional, Sequence

from core.bitcore import BitString, RandomSource, current_tie_stream


class BudgetExceededError(ValueError):
    """An exhaustive computation was asked for beyond its enumeration budget."""


@dataclass(frozen=True)
class CodecParams:
    """Message count m, block length d and declared distance D(C)."""

    m: int
    d: int
    distance: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"a code needs at least 2 messages, got m={self.m}")
        if self.d < 1:
            raise ValueError(f"block length must be positive, got d={self.d}")
        if not 1 <= self.distance <= self.d:
            raise ValueError(f"distance must lie in 1..{self.d}, got {self.distance}")


@dataclass(frozen=True)
class TieBreakPolicy:
    """
    How decoders choose among equally good answers.

    'smallest' always picks the smallest candidate; 'random' draws uniformly
    from the stream bound with tie_stream in the current thread, falling
    back to the policy's own RandomSource.
    """

    mode: str = 'smallest'
    rng: Optional[RandomSource] = None

    def __post_init__(self):
        if self.mode not in ('smallest', 'random'):
            raise ValueError(f"unknown tie-break mode: {self.mode}")
        if self.mode == 'random' and self.rng is None:
            raise ValueError("random tie-breaking needs a RandomSource")

    def choose(self, candidates: Sequence[int]) -> int:
        ordered = sorted(candidates)
        if self.mode == 'smallest' or len(ordered) == 1:
            return ordered[0]
        return current_tie_stream(self.rng).choice(ordered)


DETERMINISTIC = TieBreakPolicy()


class Codec(ABC):
    """Abstract encoder/decoder pair over messages 0..m-1 and d-bit words."""

    kind = 'abstract'

    def __init__(self):
        self.logger = logging.getLogger('ecgray')

    @property
    @abstractmethod
    def params(self) -> CodecParams:
        """Message count, block length and declared distance."""

    @abstractmethod
    def encode(self, v: int) -> BitString:
        """
        Encode a message.

        Args:
            v: Message in 0..m-1

        Returns:
            Codeword of length d
        """

    @abstractmethod
    def decode(self, c: BitString) -> int:
        """
        Decode a (possibly corrupted) word.

        Args:
            c: Word of length d

        Returns:
            Message in 0..m-1
        """

    @property
    def m(self) -> int:
        return self.params.m

    @property
    def d(self) -> int:
        return self.params.d

    @property
    def distance(self) -> int:
        return self.params.distance

    def _check_message(self, v: int):
        if not 0 <= v < self.params.m:
            raise ValueError(f"message {v} outside 0..{self.params.m - 1} for {self!r}")

    def _check_word(self, c: BitString):
        if len(c) != self.params.d:
            raise ValueError(f"word length {len(c)} != block length {self.params.d} for {self!r}")

    def describe(self) -> dict:
        """Descriptor echo used in reports."""
        return {'kind': self.kind, 'm': self.params.m, 'd': self.params.d,
                'distance': self.params.distance}

    def __repr__(self) -> str:
        p = self.params
        return f"{self.__class__.__name__}(m={p.m}, d={p.d}, D={p.distance})"
