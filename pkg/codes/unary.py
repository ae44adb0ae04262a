"""
Unary code: v ones followed by m - v zeros.
"""
from core.bitcore import BitString
from .base import Codec, CodecParams, TieBreakPolicy, DETERMINISTIC


def unary_encode(v: int, m: int) -> BitString:
    """
    Encode v as 1^v 0^(m-v).

    Raises:
        ValueError: If v is outside 0..m
    """
    if not 0 <= v <= m:
        raise ValueError(f"unary value {v} outside 0..{m}")
    return BitString(m, ((1 << v) - 1) << (m - v))


def unary_decode(c: BitString, ties: TieBreakPolicy = DETERMINISTIC) -> int:
    """
    Maximum-likelihood unary decoding in one left-to-right scan.

    The distance to 1^r 0^(len-r) is (zeros in the first r bits) + (ones in
    the rest); moving r one step right changes it by +1 for a 0 and -1 for a 1.

    Args:
        c: Received word
        ties: Choice among all r reaching the minimum

    Returns:
        An r in 0..len(c) minimising hamming(unary_encode(r, len(c)), c)
    """
    score = c.weight()
    best = score
    minima = [0]
    for r, bit in enumerate(c, start=1):
        score += -1 if bit else 1
        if score < best:
            best = score
            minima = [r]
        elif score == best:
            minima.append(r)
    return ties.choose(minima)


class UnaryCodec(Codec):
    """Unary code over messages 0..length (block length `length`, distance 1)."""

    kind = 'unary'

    def __init__(self, m: int, ties: TieBreakPolicy = DETERMINISTIC):
        """
        Args:
            m: Block length; values 0..m are encodable
            ties: Tie-break policy for decoding
        """
        super().__init__()
        self._params = CodecParams(m=m + 1, d=m, distance=1)
        self.ties = ties

    @property
    def params(self) -> CodecParams:
        return self._params

    def encode(self, v: int) -> BitString:
        return unary_encode(v, self._params.d)

    def decode(self, c: BitString) -> int:
        self._check_word(c)
        return unary_decode(c, self.ties)

    def describe(self) -> dict:
        return {'kind': self.kind, 'm': self._params.d}
