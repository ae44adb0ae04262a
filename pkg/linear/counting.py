"""
Cumulative adjacent distances of a linear code (CountCodeWords) and the
block search built on them.
"""
from bisect import bisect_right
from collections.abc import Sequence
from typing import Tuple

from .matrix import GeneratorMatrix


def count_codewords(t: int, generator: GeneratorMatrix) -> int:
    """
    Sum of hamming(enc(i-1), enc(i)) for i = 1..t without enumerating.

    Going from i-1 to i flips the k lowest binary digits of the message for
    exactly floor(t / 2^k + 1/2) values of i <= t, and the codeword then
    changes by the XOR of rows 1..k.

    Args:
        t: Number of consecutive steps, t >= 0
        generator: Generator matrix, row 1 for the least significant bit

    Returns:
        Cumulative distance cum(t)

    Raises:
        ValueError: If t is negative
    """
    if t < 0:
        raise ValueError(f"step count must be non-negative, got {t}")
    total = 0
    running = 0
    for k, row in enumerate(generator.row_values, start=1):
        running ^= row
        total += running.bit_count() * ((t + (1 << (k - 1))) >> k)
    return total


def brute_force_count(t: int, generator: GeneratorMatrix) -> int:
    """Reference summation of adjacent codeword distances, one step at a time."""
    if t < 0:
        raise ValueError(f"step count must be non-negative, got {t}")
    rows = generator.row_values

    def encode(v: int) -> int:
        word = 0
        for k, row in enumerate(rows):
            if (v >> k) & 1:
                word ^= row
        return word

    total = 0
    previous = encode(0)
    for i in range(1, t + 1):
        current = encode(i)
        total += (previous ^ current).bit_count()
        previous = current
    return total


def find_block(layout, v: int) -> Tuple[int, int]:
    """
    Locate v inside the linear Gray layout.

    Args:
        layout: LinearGrayLayout
        v: Value in 0..M-1

    Returns:
        (l, r) with 3*cum(l) <= v < 3*cum(l+1) and r = v - 3*cum(l)

    Raises:
        ValueError: If v is outside the encodable range
    """
    if not 0 <= v < layout.max_value:
        raise ValueError(f"value {v} outside 0..{layout.max_value - 1}")
    l = bisect_right(_BlockStarts(layout), v) - 1
    return l, v - layout.start(l)


class _BlockStarts(Sequence):
    """Lazy view of 3*cum(l) for blocks l = 0..m-2, increasing in l."""

    def __init__(self, layout):
        self.layout = layout

    def __len__(self) -> int:
        return self.layout.code.m - 1

    def __getitem__(self, l: int) -> int:
        return self.layout.start(l)
