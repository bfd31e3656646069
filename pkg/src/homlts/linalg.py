"""Exact rational linear algebra on numpy object arrays.

Scalars are Python ``int`` (when integral) or ``fractions.Fraction`` in lowest
terms. Keeping integral values as ``int`` matters: object-array arithmetic on
ints is two orders of magnitude faster than on Fractions. Never divide array
entries with ``/``; ``int / int`` would produce a float. Use :func:`inverse`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Rational",
    "rational",
    "format_rational",
    "inverse",
    "matrix",
    "vector",
    "zeros",
    "identity",
    "is_zero",
    "canonicalize",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "SignedPermutation",
    "permutation_sign",
    "unshuffles",
]

Rational = int | Fraction


def rational(x) -> Rational:
    """Parse ``x`` into a canonical exact rational.

    Accepts ints, Fractions and strings such as ``"3"``, ``"-2/5"``. Floats are
    refused: every identity in this package is an exact equality.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        s = x.strip()
        if not s or any(ch in s for ch in ".eE"):
            raise ValueError(f"not an exact rational string: {x!r}")
        q = Fraction(s)
        return q.numerator if q.denominator == 1 else q
    if isinstance(x, _RationalABC):
        q = Fraction(x.numerator, x.denominator)
        return q.numerator if q.denominator == 1 else q
    raise TypeError(f"cannot interpret {type(x).__name__} as an exact rational")


def format_rational(x) -> str:
    q = Fraction(x)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def inverse(x) -> Rational:
    if x == 0:
        raise ZeroDivisionError("inverse of zero")
    if x == 1 or x == -1:
        return int(x)
    return rational(Fraction(1) / x)


_canon = np.frompyfunc(rational, 1, 1)


def canonicalize(a: np.ndarray) -> np.ndarray:
    """Return a copy of ``a`` with integral Fractions demoted to ints."""
    a = np.asarray(a, dtype=object)
    if a.size == 0:
        return a.copy()
    return np.asarray(_canon(a), dtype=object).reshape(a.shape)


def matrix(rows: Iterable[Iterable]) -> np.ndarray:
    rows = [list(r) for r in rows]
    if not rows:
        return np.zeros((0, 0), dtype=object)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix rows")
    out = np.empty((len(rows), width), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            out[i, j] = rational(x)
    return out


def vector(entries: Iterable) -> np.ndarray:
    vals = [rational(x) for x in entries]
    out = np.empty(len(vals), dtype=object)
    out[:] = vals
    return out


def zeros(*shape: int) -> np.ndarray:
    return np.zeros(shape, dtype=object)


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def is_zero(a) -> bool:
    a = np.asarray(a, dtype=object)
    return not np.any(a != 0)


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the list of pivot columns.

    Pivot rule: scan columns left to right; the pivot of a column is the first
    row at or below the current row with a nonzero entry there.
    """
    a = canonicalize(m)
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, col] != 0)[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        piv = a[r, col]
        if piv != 1:
            a[r] = a[r] * inverse(piv)
        others = np.nonzero(a[:, col] != 0)[0]
        others = others[others != r]
        if others.size:
            a[others] = a[others] - np.multiply.outer(a[others, col], a[r])
        pivots.append(col)
        r += 1
    return canonicalize(a), pivots


def rank(m: np.ndarray) -> int:
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return 0
    return len(rref(m)[1])


def kernel_basis(m: np.ndarray) -> list[np.ndarray]:
    """Basis of the null space, one vector per free column in increasing order.

    Each basis vector has a 1 at its own free column and 0 at every other free
    column, so coordinates of a kernel element can be read off at the free
    columns.
    """
    m = np.asarray(m, dtype=object)
    ncols = m.shape[1]
    if m.shape[0] == 0:
        red, pivots = np.zeros((0, ncols), dtype=object), []
    else:
        red, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = zeros(ncols)
        v[f] = 1
        for row, p in enumerate(pivots):
            v[p] = -red[row, f]
        basis.append(v)
    return basis


def solve(m: np.ndarray, b: Sequence) -> np.ndarray | None:
    """A particular solution of ``m @ x == b`` with free variables zero, or None."""
    m = np.asarray(m, dtype=object)
    b = np.asarray(b, dtype=object).reshape(-1)
    nrows, ncols = m.shape
    if b.shape[0] != nrows:
        raise ValueError(f"right-hand side has length {b.shape[0]}, expected {nrows}")
    aug = np.concatenate([m.reshape(nrows, ncols), b.reshape(nrows, 1)], axis=1)
    red, pivots = rref(aug)
    if pivots and pivots[-1] == ncols:
        return None
    x = zeros(ncols)
    for row, p in enumerate(pivots):
        x[p] = red[row, ncols]
    return x


@dataclass(frozen=True)
class SignedPermutation:
    """A permutation of ``range(n)`` together with its sign.

    ``image[k]`` is the (0-based) index placed at position ``k``.
    """

    image: tuple[int, ...]
    sign: int

    def __post_init__(self):
        if sorted(self.image) != list(range(len(self.image))):
            raise ValueError(f"not a permutation: {self.image}")
        if self.sign != permutation_sign(self.image):
            raise ValueError("sign does not match parity")

    def __len__(self):
        return len(self.image)


def permutation_sign(image: Sequence[int]) -> int:
    inversions = sum(
        1 for i in range(len(image)) for j in range(i + 1, len(image)) if image[i] > image[j]
    )
    return -1 if inversions % 2 else 1


def unshuffles(p: int, q: int) -> list[SignedPermutation]:
    """All (p, q)-unshuffles, ordered lexicographically by the first block."""
    if p < 0 or q < 0:
        raise ValueError("block sizes must be non-negative")
    n = p + q
    out = []
    for first in itertools.combinations(range(n), p):
        rest = tuple(i for i in range(n) if i not in first)
        image = first + rest
        out.append(SignedPermutation(image, permutation_sign(image)))
    assert len(out) == math.comb(n, p)
    return out
