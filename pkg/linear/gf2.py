"""
Gaussian elimination and related helpers over GF(2).

Matrices are 2-D numpy uint8 arrays of 0/1 values.
"""
from typing import List, Tuple

import numpy as np


def rref(matrix: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """
    Reduce a binary matrix to reduced row echelon form.

    Pivoting takes the first column with a nonzero entry at or below the
    current row and only swaps rows, so the result is deterministic.

    Args:
        matrix: Binary matrix

    Returns:
        Tuple of (reduced matrix, pivot column indices)
    """
    reduced = (np.array(matrix, dtype=np.uint8) & 1).copy()
    rows, cols = reduced.shape
    pivots = []
    r = 0
    for lead in range(cols):
        if r == rows:
            break
        nonzero = np.flatnonzero(reduced[r:, lead])
        if nonzero.size == 0:
            continue
        i = r + nonzero[0]
        if i != r:
            reduced[[r, i]] = reduced[[i, r]]
        others = np.flatnonzero(reduced[:, lead])
        others = others[others != r]
        reduced[others] ^= reduced[r]
        pivots.append(lead)
        r += 1
    return reduced, pivots


def rank(matrix: np.ndarray) -> int:
    """Rank over GF(2)."""
    return len(rref(matrix)[1])


def inverse(matrix: np.ndarray) -> np.ndarray:
    """
    Inverse of a square binary matrix.

    Raises:
        ValueError: If the matrix is singular
    """
    n = matrix.shape[0]
    if matrix.shape != (n, n):
        raise ValueError(f"inverse needs a square matrix, got shape {matrix.shape}")
    augmented = np.hstack([np.asarray(matrix, dtype=np.uint8), np.eye(n, dtype=np.uint8)])
    reduced, pivots = rref(augmented)
    if len(pivots) < n or pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular over GF(2)")
    return reduced[:, n:].copy()


def null_space(matrix: np.ndarray) -> Tuple[np.ndarray, List[int], int]:
    """
    Basis of the vectors orthogonal to every row of a binary matrix.

    Basis vector j has a 1 at the j-th free (non-pivot) column of the
    reduced matrix and zeros at all other free columns, so coordinate j of a
    combination can be read straight off that column.

    Args:
        matrix: Binary matrix with shape (rows, d)

    Returns:
        Tuple of (basis with shape (d - rank, d), free columns, rank)
    """
    reduced, pivots = rref(matrix)
    d = matrix.shape[1]
    pivot_set = set(pivots)
    free = [col for col in range(d) if col not in pivot_set]
    basis = np.zeros((len(free), d), dtype=np.uint8)
    if free:
        basis[np.arange(len(free)), free] = 1
        if pivots:
            basis[:, pivots] = reduced[:len(pivots)][:, free].T
    return basis, free, len(pivots)


def systematic_generator(parity: np.ndarray) -> Tuple[np.ndarray, List[int], int]:
    """Generator of the code defined by a parity-check matrix (see null_space)."""
    return null_space(parity)


def parity_from_generator(generator: np.ndarray) -> np.ndarray:
    """Parity-check matrix H with G H^T = 0 for a generator G."""
    return null_space(generator)[0]
