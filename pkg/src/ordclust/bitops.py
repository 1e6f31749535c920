"""Vectorised bitmask helpers for subset enumeration and subset sums.

Element sets are encoded as Python ints / int64 masks with element ``i`` at
bit ``i``.  All routines below operate on the full lattice of ``2**m`` masks
at once, which is what keeps the exact cut enumerator and the subset DP
tractable at the supported sizes (m <= 22 and n <= 14 by default).
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "bits_of",
    "mask_of",
    "popcounts",
    "subset_sums",
    "pair_sums",
    "submasks_of",
]


def bits_of(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(indices) -> int:
    """Bitmask with the given indices set."""
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def popcounts(m: int) -> np.ndarray:
    """Array of popcounts for every mask in ``[0, 2**m)``."""
    pc = np.zeros(1 << m, dtype=np.int64)
    for b in range(m):
        step = 1 << b
        pc.reshape(-1, 2 * step)[:, step:] += 1
    return pc


def subset_sums(values: np.ndarray) -> np.ndarray:
    """``out[mask] = sum(values[b] for b in mask)`` over all masks."""
    m = len(values)
    out = np.zeros(1 << m)
    for b in range(m):
        step = 1 << b
        out.reshape(-1, 2 * step)[:, step:] += values[b]
    return out


def pair_sums(matrix: np.ndarray) -> np.ndarray:
    """``out[mask] = sum(matrix[x, y] for {x, y} in mask, x < y)`` over all masks.

    ``matrix`` need not be symmetric; only its upper triangle is read.
    Runs in O(m * 2**m) by peeling the lowest set bit of every mask.
    """
    m = matrix.shape[0]
    out = np.zeros(1 << m)
    # Masks whose lowest bit is b decompose as {b} + (mask over bits > b).
    for b in range(m - 1, -1, -1):
        hi = m - b - 1
        row = matrix[b, b + 1 :]
        rs = subset_sums(row) if hi else np.zeros(1)
        idx = np.arange(1 << hi, dtype=np.int64) << (b + 1)
        out[idx | (1 << b)] = out[idx] + rs
    return out


def submasks_of(mask: int, proper: bool = True) -> np.ndarray:
    """All submasks of ``mask`` as an ascending int64 array.

    With ``proper`` the empty mask and ``mask`` itself are excluded.
    """
    bits = bits_of(mask)
    k = len(bits)
    lo, hi = (1, (1 << k) - 1) if proper else (0, 1 << k)
    combos = np.arange(lo, hi, dtype=np.int64)
    spread = (combos[:, None] >> np.arange(k)) & 1
    return spread @ np.array([1 << b for b in bits], dtype=np.int64)
