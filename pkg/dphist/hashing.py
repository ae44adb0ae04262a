"""
Pairwise-independent hashing of universe elements onto table rows.
"""
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from core.bitcore import RandomSource

MERSENNE_61 = (1 << 61) - 1


@dataclass(frozen=True)
class HashFunction:
    """h(x) = ((a x + b) mod (2^61 - 1)) mod width."""

    a: int
    b: int
    width: int

    def __post_init__(self):
        if self.width < 1:
            raise ValueError(f"hash width must be positive, got {self.width}")
        if not 0 <= self.a < MERSENNE_61 or not 0 <= self.b < MERSENNE_61:
            raise ValueError("hash coefficients must lie in 0..2^61-2")

    def __call__(self, x: int) -> int:
        return ((self.a * x + self.b) % MERSENNE_61) % self.width


class HashFamily:
    """One independently seeded hash function per table column."""

    def __init__(self, functions: Sequence[HashFunction]):
        if not functions:
            raise ValueError("a hash family needs at least one function")
        self.functions: Tuple[HashFunction, ...] = tuple(functions)

    @classmethod
    def sample(cls, rng: RandomSource, columns: int, width: int) -> 'HashFamily':
        functions = []
        for b in range(columns):
            column_rng = rng.split('column', b)
            a = int(column_rng.integers(1, MERSENNE_61))
            offset = int(column_rng.integers(0, MERSENNE_61))
            functions.append(HashFunction(a, offset, width))
        return cls(functions)

    @classmethod
    def identity(cls, columns: int, width: int) -> 'HashFamily':
        """h_b(x) = x mod width for every column; injective on 0..width-1."""
        return cls([HashFunction(1, 0, width)] * columns)

    @property
    def columns(self) -> int:
        return len(self.functions)

    @property
    def width(self) -> int:
        return self.functions[0].width

    def rows(self, x: int) -> List[int]:
        """Table row read or written for element x in every column."""
        return [h(x) for h in self.functions]

    def seeds(self) -> List[Tuple[int, int]]:
        return [(h.a, h.b) for h in self.functions]

    def __eq__(self, other) -> bool:
        if not isinstance(other, HashFamily):
            return NotImplemented
        return self.functions == other.functions

    def __hash__(self) -> int:
        return hash(self.functions)
