"""
Error-correcting Gray code built on a black-box inner code.
"""
from functools import lru_cache
from typing import List, Tuple

from core.bitcore import BitString, concat, diff_positions, hamming, prefix, suffix
from .base import Codec, CodecParams, TieBreakPolicy, DETERMINISTIC
from .ccd import ConstantDistanceCodec
from .unary import unary_decode


class GrayLayout:
    """
    Layout tables of the Gray construction over K = ConstantDistanceCodec(inner).

    Values v = q*g + r interpolate between K(q) and K(q+1) by switching the
    g differing bits one at a time, left to right. Encodable values are
    0..(m-1)*g - 1 so that q + 1 is always a valid inner message.
    """

    def __init__(self, inner: Codec, ties: TieBreakPolicy = DETERMINISTIC,
                 cache_size: int = 4096):
        self.inner = inner
        self.ccd = ConstantDistanceCodec(inner, ties)
        self.g = self.ccd.step_distance
        self.block_len = self.ccd.d
        self.max_value = (inner.m - 1) * self.g
        self.codeword = lru_cache(maxsize=cache_size)(self.ccd.encode)
        self._diff_index = lru_cache(maxsize=cache_size)(self._compute_diff_index)

    def _compute_diff_index(self, q: int) -> Tuple[int, ...]:
        positions = diff_positions(self.codeword(q), self.codeword(q + 1))
        if len(positions) != self.g:
            raise ValueError(f"K({q}) and K({q + 1}) differ in {len(positions)} bits, expected {self.g}")
        return positions

    def diff_index(self, q: int) -> Tuple[int, ...]:
        """
        Sorted 1-based positions b_1..b_g where K(q) and K(q+1) differ.

        Raises:
            ValueError: If q is outside 0..m-2
        """
        if not 0 <= q < self.inner.m - 1:
            raise ValueError(f"block index {q} outside 0..{self.inner.m - 2}")
        return self._diff_index(q)

    def __repr__(self) -> str:
        return f"GrayLayout(g={self.g}, block_len={self.block_len}, max_value={self.max_value})"


def gray_layout(inner: Codec) -> GrayLayout:
    return GrayLayout(inner)


def gray_encode(layout: GrayLayout, v: int) -> BitString:
    """
    Encode v = q*g + r as the first b_r bits of K(q+1) followed by the
    remaining bits of K(q).

    Raises:
        ValueError: If v is outside 0..M-1
    """
    if not 0 <= v < layout.max_value:
        raise ValueError(f"value {v} outside 0..{layout.max_value - 1}")
    q, r = divmod(v, layout.g)
    if r == 0:
        return layout.codeword(q)
    split = layout.diff_index(q)[r - 1]
    return concat(prefix(layout.codeword(q + 1), split),
                  suffix(layout.codeword(q), layout.block_len - split))


def h_vector(layout: GrayLayout, c: BitString, q: int) -> BitString:
    """
    Bits of c at the positions where K(q) and K(q+1) differ: 0 where c agrees
    with K(q), 1 where it agrees with K(q+1).
    """
    delta = c.value ^ layout.codeword(q).value
    n = layout.block_len
    return BitString.from_bits((delta >> (n - pos)) & 1 for pos in layout.diff_index(q))


def gray_candidates(layout: GrayLayout, c: BitString,
                    ties: TieBreakPolicy = DETERMINISTIC) -> List[int]:
    """The (at most two) values the decoder chooses between, clamped into range."""
    if len(c) != layout.block_len:
        raise ValueError(f"word length {len(c)} != block length {layout.block_len}")
    t = layout.ccd.decode(c)
    top = layout.inner.m - 1
    candidates = []
    if t >= 1:
        candidates.append(layout.g * (t - 1) + unary_decode(h_vector(layout, c, t - 1), ties))
    if t < top:
        candidates.append(layout.g * t + unary_decode(h_vector(layout, c, t), ties))
    return sorted({min(max(v, 0), layout.max_value - 1) for v in candidates})


def gray_decode(layout: GrayLayout, c: BitString,
                ties: TieBreakPolicy = DETERMINISTIC) -> int:
    """
    Decode to whichever candidate's encoding is Hamming-closer to c; equal
    distances go to the smaller value.
    """
    candidates = gray_candidates(layout, c, ties)
    return min(candidates, key=lambda v: (hamming(c, gray_encode(layout, v)), v))


class GrayCodec(Codec):
    """Sensitivity-1 error-correcting Gray code over a black-box inner code."""

    kind = 'gray'

    def __init__(self, inner: Codec, ties: TieBreakPolicy = DETERMINISTIC):
        super().__init__()
        self.inner = inner
        self.ties = ties
        self.layout = GrayLayout(inner, ties)
        self._params = CodecParams(m=self.layout.max_value, d=self.layout.block_len, distance=1)
        self.logger.debug(f"Built {self!r} over {inner!r} with g={self.layout.g}")

    @property
    def params(self) -> CodecParams:
        return self._params

    def encode(self, v: int) -> BitString:
        return gray_encode(self.layout, v)

    def decode(self, c: BitString) -> int:
        return gray_decode(self.layout, c, self.ties)

    def candidates(self, c: BitString) -> List[int]:
        return gray_candidates(self.layout, c, self.ties)

    def describe(self) -> dict:
        return {'kind': self.kind, 'inner': self.inner.describe()}
