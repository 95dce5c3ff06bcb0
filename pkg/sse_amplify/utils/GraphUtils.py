from typing import Iterable, Tuple

import numpy as np


def members_from_mask(mask: int) -> Tuple[int, ...]:
    members = []
    index = 0
    while mask:
        if mask & 1:
            members.append(index)
        mask >>= 1
        index += 1
    return tuple(members)


def indicator_rows(masks: np.ndarray, n: int) -> np.ndarray:
    """0/1 matrix with one row per subset mask."""
    bits = np.left_shift(np.int64(1), np.arange(n, dtype=np.int64))
    return ((masks[:, None] & bits[None, :]) != 0).astype(float)


def popcounts(masks: np.ndarray, n: int) -> np.ndarray:
    return ((masks[:, None] >> np.arange(n, dtype=np.int64)) & 1).sum(axis=1)


def indicator(n: int, members: Iterable[int]) -> np.ndarray:
    x = np.zeros(n)
    x[list(members)] = 1.0
    return x


def symmetrize(matrix: np.ndarray) -> np.ndarray:
    return 0.5 * (matrix + matrix.T)


def relative_gap(a: np.ndarray, b: np.ndarray) -> float:
    """max |a - b| / |b| over entries, 0 for identical arrays."""
    scale = np.maximum(np.abs(b), np.finfo(float).tiny)
    return float(np.max(np.abs(a - b) / scale))
