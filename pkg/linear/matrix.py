"""
Generator matrices over GF(2) and their text file format.

File format: first line "n d", then n lines of d '0'/'1' characters. Row 1
is the row selected by the least significant message bit.
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Sequence, Tuple

import numpy as np

from core.bitcore import BitString
from . import gf2


@dataclass(frozen=True)
class GeneratorMatrix:
    """n x d binary matrix with linearly independent rows."""

    rows: np.ndarray
    row_values: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rows = np.array(self.rows, dtype=np.uint8) & 1
        if rows.ndim != 2 or rows.shape[0] < 1:
            raise ValueError(f"generator must be a non-empty 2-D matrix, got shape {rows.shape}")
        n, d = rows.shape
        if n > d:
            raise ValueError(f"generator has more rows than columns ({n} > {d})")
        if gf2.rank(rows) != n:
            raise ValueError("generator rows are linearly dependent over GF(2)")
        rows.setflags(write=False)
        object.__setattr__(self, 'rows', rows)
        object.__setattr__(self, 'row_values',
                           tuple(BitString.from_array(row).value for row in rows))

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> 'GeneratorMatrix':
        """Build from '0'/'1' row strings, row 1 first."""
        return cls(np.array([[int(ch) for ch in row.strip()] for row in rows], dtype=np.uint8))

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @property
    def d(self) -> int:
        return self.rows.shape[1]

    def row(self, i: int) -> BitString:
        """Row i, 1-based."""
        if not 1 <= i <= self.n:
            raise ValueError(f"row index {i} outside 1..{self.n}")
        return BitString(self.d, self.row_values[i - 1])

    def to_strings(self) -> List[str]:
        return [''.join(str(int(bit)) for bit in row) for row in self.rows]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GeneratorMatrix):
            return NotImplemented
        return self.rows.shape == other.rows.shape and bool(np.array_equal(self.rows, other.rows))

    def __hash__(self) -> int:
        return hash(self.row_values)


def parse_matrix_text(text: str) -> np.ndarray:
    """
    Parse the "rows cols" + rows text format into a binary array.

    Raises:
        ValueError: On a malformed header or rows
    """
    lines = [line.strip() for line in text.splitlines() if line.strip() and not line.startswith('#')]
    if not lines:
        raise ValueError("empty matrix file")
    header = lines[0].split()
    if len(header) != 2 or not all(part.isdigit() for part in header):
        raise ValueError(f"matrix header must be 'rows cols', got {lines[0]!r}")
    n, d = int(header[0]), int(header[1])
    body = lines[1:]
    if len(body) != n:
        raise ValueError(f"expected {n} rows, found {len(body)}")
    for i, row in enumerate(body, start=1):
        if len(row) != d or any(ch not in '01' for ch in row):
            raise ValueError(f"row {i} must be {d} characters of '0'/'1', got {row!r}")
    return np.array([[int(ch) for ch in row] for row in body], dtype=np.uint8).reshape(n, d)


def format_matrix_text(matrix: np.ndarray) -> str:
    rows, cols = matrix.shape
    lines = [f"{rows} {cols}"]
    lines.extend(''.join(str(int(bit)) for bit in row) for row in matrix)
    return '\n'.join(lines) + '\n'


def read_generator(path: str) -> GeneratorMatrix:
    """Load a generator matrix file."""
    return GeneratorMatrix(parse_matrix_text(Path(path).read_text(encoding='utf-8')))


def write_matrix(matrix: np.ndarray, path: str):
    """Write any binary matrix (generator or parity checks) in the text format."""
    output = Path(path)
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(format_matrix_text(np.asarray(matrix)), encoding='utf-8')
