"""
Binary sketch files and the counts CSV input.

Sketch layout (little endian):
    magic b"ECGH", u16 version
    header: u64 u, u64 n, f64 eps, u32 ell, u32 dprime, u64 s, f64 q, f64 gamma,
            u8 debug, i64 build seed
    u32 length + UTF-8 JSON codec descriptor
    dprime x (u64 a, u64 b) hash coefficients
    packed table bits, row-major, ceil(s * dprime / 8) bytes
    u32 count + (u64 element, i64 noisy count) pairs sorted by element
"""
import csv
import json
import struct
from collections import Counter
from pathlib import Path

import numpy as np

from codes.factory import CodecFactory
from .hashing import HashFamily, HashFunction
from .params import HistParams
from .sketch import PrivateHistogram

MAGIC = b'ECGH'
VERSION = 1
_PREFIX = struct.Struct('<4sH')
_HEADER = struct.Struct('<QQdIIQddBq')
_LENGTH = struct.Struct('<I')
_SEED = struct.Struct('<QQ')
_HEAVY = struct.Struct('<Qq')


def dumps(hist: PrivateHistogram) -> bytes:
    p = hist.params
    parts = [
        _PREFIX.pack(MAGIC, VERSION),
        _HEADER.pack(p.u, p.n, p.eps, p.ell, p.dprime, p.s, p.q, p.gamma, int(p.debug),
                     hist.build_seed),
    ]
    descriptor = json.dumps(hist.codec.describe(), sort_keys=True).encode('utf-8')
    parts.append(_LENGTH.pack(len(descriptor)))
    parts.append(descriptor)
    parts.extend(_SEED.pack(a, b) for a, b in hist.hashes.seeds())
    parts.append(np.packbits(hist.noisy_table.ravel()).tobytes())
    parts.append(_LENGTH.pack(len(hist.heavy)))
    parts.extend(_HEAVY.pack(element, count) for element, count in sorted(hist.heavy.items()))
    return b''.join(parts)


def loads(blob: bytes) -> PrivateHistogram:
    """
    Raises:
        ValueError: On a bad magic, unknown version or truncated data
    """
    try:
        magic, version = _PREFIX.unpack_from(blob, 0)
        if magic != MAGIC:
            raise ValueError(f"not a histogram sketch (magic {magic!r})")
        if version != VERSION:
            raise ValueError(f"unsupported sketch version {version}, expected {VERSION}")
        offset = _PREFIX.size
        u, n, eps, ell, dprime, s, q, gamma, debug, seed = _HEADER.unpack_from(blob, offset)
        offset += _HEADER.size
        params = HistParams(u=u, n=n, eps=eps, ell=ell, dprime=dprime, s=s, q=q,
                            gamma=gamma, debug=bool(debug))

        (length,) = _LENGTH.unpack_from(blob, offset)
        offset += _LENGTH.size
        descriptor = json.loads(blob[offset:offset + length].decode('utf-8'))
        offset += length
        codec = CodecFactory().build(descriptor)

        functions = []
        for _ in range(dprime):
            a, b = _SEED.unpack_from(blob, offset)
            offset += _SEED.size
            functions.append(HashFunction(a, b, s))

        cells = s * dprime
        nbytes = (cells + 7) // 8
        packed = np.frombuffer(blob, dtype=np.uint8, count=nbytes, offset=offset)
        table = np.unpackbits(packed)[:cells].reshape(s, dprime)
        offset += nbytes

        (entries,) = _LENGTH.unpack_from(blob, offset)
        offset += _LENGTH.size
        heavy = {}
        for _ in range(entries):
            element, count = _HEAVY.unpack_from(blob, offset)
            offset += _HEAVY.size
            heavy[element] = count
    except struct.error as e:
        raise ValueError(f"truncated sketch: {e}") from e
    if offset != len(blob):
        raise ValueError(f"{len(blob) - offset} trailing bytes after sketch")
    return PrivateHistogram(params=params, codec=codec, hashes=HashFamily(functions),
                            noisy_table=table, heavy=heavy, build_seed=seed)


def save(hist: PrivateHistogram, path: str):
    output = Path(path)
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_bytes(dumps(hist))


def load(path: str) -> PrivateHistogram:
    return loads(Path(path).read_bytes())


def read_counts(path: str) -> Counter:
    """
    Read element,count rows; a header row and blank lines are skipped.

    Raises:
        ValueError: On rows that are not two integers or negative counts
    """
    counts = Counter()
    with open(path, 'r', newline='') as f:
        for lineno, row in enumerate(csv.reader(f), start=1):
            if not row or not ''.join(row).strip() or row[0].startswith('#'):
                continue
            if lineno == 1 and not row[0].strip().lstrip('-').isdigit():
                continue
            if len(row) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'element,count', got {row!r}")
            try:
                element, count = int(row[0]), int(row[1])
            except ValueError as e:
                raise ValueError(f"{path}:{lineno}: {e}") from e
            if count < 0:
                raise ValueError(f"{path}:{lineno}: negative count {count}")
            counts[element] += count
    return counts
