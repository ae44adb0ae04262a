"""
Complement code: odd messages are bitwise negated and tagged with a parity pad.
"""
from core.bitcore import BitString, concat, complement, prefix, suffix
from .base import Codec, CodecParams, TieBreakPolicy, DETERMINISTIC


def complement_encode(inner: Codec, v: int) -> BitString:
    """
    Encode v as C(v) 0^D for even v and ~C(v) 1^D for odd v.

    Args:
        inner: Inner code C with declared distance D
        v: Message

    Returns:
        Word of length d + D
    """
    word = inner.encode(v)
    pad = inner.distance
    if v % 2 == 0:
        return concat(word, BitString.zeros(pad))
    return concat(complement(word), BitString.ones(pad))


def complement_decode(inner: Codec, ct: BitString,
                      ties: TieBreakPolicy = DETERMINISTIC) -> int:
    """
    Decode by reading the parity from the majority of the tail.

    A tied tail (even D) is resolved by the policy; the deterministic
    policy takes the majority-0 branch.

    Raises:
        ValueError: If ct is not d + D bits long
    """
    d = inner.d
    pad = inner.distance
    if len(ct) != d + pad:
        raise ValueError(f"complement word length {len(ct)} != {d + pad}")
    head = prefix(ct, d)
    ones = suffix(ct, pad).weight()
    zeros = pad - ones
    if zeros > ones:
        odd = 0
    elif ones > zeros:
        odd = 1
    else:
        odd = ties.choose([0, 1])
    return inner.decode(complement(head) if odd else head)


class ComplementCodec(Codec):
    """The complement code L built on an inner code C."""

    kind = 'complement'

    def __init__(self, inner: Codec, ties: TieBreakPolicy = DETERMINISTIC):
        super().__init__()
        self.inner = inner
        self.ties = ties
        p = inner.params
        self._params = CodecParams(m=p.m, d=p.d + p.distance, distance=p.distance)

    @property
    def params(self) -> CodecParams:
        return self._params

    def encode(self, v: int) -> BitString:
        self._check_message(v)
        return complement_encode(self.inner, v)

    def decode(self, c: BitString) -> int:
        return complement_decode(self.inner, c, self.ties)

    def describe(self) -> dict:
        return {'kind': self.kind, 'inner': self.inner.describe()}
