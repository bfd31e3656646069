"""Small helpers for multilinear maps stored as object-dtype coefficient tensors.

Convention used everywhere: a map with ``k`` inputs is a tensor of ndim ``k+1``
whose last axis is the output coordinate, and a linear map ``M`` acts on basis
vectors by ``M e_j = sum_i M[i, j] e_i`` (columns are images).
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .linalg import identity


def apply_in(t: np.ndarray, m: np.ndarray, axis: int) -> np.ndarray:
    """Precompose the input on ``axis`` with ``m``: t'(.., e_i, ..) = t(.., m e_i, ..)."""
    out = np.tensordot(m, t, axes=([0], [axis]))
    return np.moveaxis(out, 0, axis)


def apply_out(t: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Postcompose the output (last axis) with ``m``."""
    return np.tensordot(t, m, axes=([t.ndim - 1], [1]))


def apply_ins(t: np.ndarray, m: np.ndarray, axes: Iterable[int]) -> np.ndarray:
    for ax in axes:
        t = apply_in(t, m, ax)
    return t


def matrix_power(m: np.ndarray, k: int) -> np.ndarray:
    out = identity(m.shape[0])
    for _ in range(k):
        out = out @ m
    return out


def first_nonzero(mask: np.ndarray, limit: int) -> list[tuple[int, ...]]:
    """Up to ``limit`` index tuples where ``mask`` is true, in lexicographic order."""
    idx = np.argwhere(mask)
    return [tuple(int(i) for i in row) for row in idx[:limit]]
