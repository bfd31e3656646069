"""Cochain spaces, coboundary matrices, cohomology and the graded bracket.

An n-cochain is stored as its full coefficient tensor of shape
``(d,) * (2n - 1) + (dim V,)``: n - 1 antisymmetric pairs, one trailing
argument, then the output coordinate. A 1-cochain is therefore the transpose
of its matrix, and a triple bracket tensor is literally a 2-cochain.

Constrained subspaces get coordinates through :class:`CochainBasis`. Internally
each pair slot is reduced to its ``i < j`` entries, so antisymmetry is built in
and only equivariance and the cyclic condition are solved for.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._tensor import apply_in, apply_ins, first_nonzero, matrix_power
from .core import (
    DEFAULT_WITNESS_LIMIT,
    AxiomReport,
    CompatibleHomLts,
    CompatibleRepresentation,
    HomLts,
    HomSpace,
    Representation,
    TriBracket,
    _d_of,
    direct_sum_twist,
)
from .linalg import canonicalize, identity, kernel_basis, matrix, rank, rref, solve, unshuffles, zeros

__all__ = [
    "DEFAULT_MAX_DEGREE",
    "DegreeCapError",
    "Cochain",
    "CompatibleCochain",
    "CochainBasis",
    "CohomologyReport",
    "cochain_space_basis",
    "cochain_report",
    "coboundary",
    "coboundary_displayed",
    "delta_matrix",
    "delta_c_matrix",
    "cohomology",
    "class_coordinates",
    "graded_bracket",
    "diamond",
    "mc_self_report",
    "mc_self_check",
    "mc_pair_report",
    "mc_pair_check",
    "twisted_mc_report",
    "twisted_mc_check",
    "lift_cochain",
    "phi_chain_map",
]

DEFAULT_MAX_DEGREE = 4


class DegreeCapError(ValueError):
    """Requested cochain degree is above the configured cap."""


def _check_degree(n: int, max_degree: int) -> None:
    if n < 1:
        raise ValueError(f"cochain degree must be at least 1, got {n}")
    if n > max_degree:
        raise DegreeCapError(f"degree {n} exceeds the cap {max_degree} (raise it with max_degree / --max-degree)")


# ---------------------------------------------------------------------------
# cochains


@dataclass(frozen=True, eq=False)
class Cochain:
    """A cochain of degree ``n`` on ``g`` with values in ``v``.

    ``cyclic`` marks the variant with the trailing-triple cyclic condition;
    the flag is a label, membership is checked by :func:`cochain_report`.
    """

    g: HomSpace
    v: HomSpace
    n: int
    coeffs: np.ndarray
    cyclic: bool = True

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("cochain degree must be at least 1")
        t = canonicalize(np.asarray(self.coeffs, dtype=object))
        want = (self.g.dim,) * (2 * self.n - 1) + (self.v.dim,)
        if t.shape != want:
            raise ValueError(f"degree-{self.n} cochain needs shape {want}, got {t.shape}")
        t.flags.writeable = False
        object.__setattr__(self, "coeffs", t)

    @property
    def arity(self) -> int:
        return 2 * self.n - 1

    @classmethod
    def zero(cls, g: HomSpace, v: HomSpace, n: int, cyclic: bool = True) -> "Cochain":
        return cls(g, v, n, zeros(*((g.dim,) * (2 * n - 1) + (v.dim,))), cyclic)

    @classmethod
    def from_map(cls, g: HomSpace, v: HomSpace, m, cyclic: bool = True) -> "Cochain":
        """1-cochain from a ``dim V x dim g`` matrix."""
        m = matrix(m) if not isinstance(m, np.ndarray) else m
        return cls(g, v, 1, np.asarray(m, dtype=object).T, cyclic)

    @classmethod
    def from_bracket(cls, space: HomSpace, b: TriBracket | np.ndarray, cyclic: bool = False) -> "Cochain":
        c = b.c if isinstance(b, TriBracket) else b
        return cls(space, space, 2, c, cyclic)

    def as_map(self) -> np.ndarray:
        if self.n != 1:
            raise ValueError("only 1-cochains are linear maps")
        return self.coeffs.T.copy()

    def as_bracket(self) -> TriBracket:
        if self.n != 2 or self.g.dim != self.v.dim:
            raise ValueError("only g-valued 2-cochains are triple brackets")
        return TriBracket(self.coeffs)

    def is_zero(self) -> bool:
        return not np.any(self.coeffs != 0)

    def _like(self, t) -> "Cochain":
        return Cochain(self.g, self.v, self.n, t, self.cyclic)

    def __add__(self, other: "Cochain") -> "Cochain":
        return self._like(self.coeffs + other.coeffs)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self._like(self.coeffs - other.coeffs)

    def __neg__(self) -> "Cochain":
        return self._like(-self.coeffs)

    def scale(self, k) -> "Cochain":
        return self._like(self.coeffs * k)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.n == other.n and self.coeffs.shape == other.coeffs.shape and bool(
            np.all(self.coeffs == other.coeffs)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class CompatibleCochain:
    parts: tuple[Cochain, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise ValueError("a compatible cochain needs at least one part")
        n = parts[0].n
        if len(parts) != n:
            raise ValueError(f"a degree-{n} compatible cochain has {n} parts, got {len(parts)}")
        for p in parts:
            if p.n != n or p.coeffs.shape != parts[0].coeffs.shape or p.cyclic != parts[0].cyclic:
                raise ValueError("parts of a compatible cochain must share degree, spaces and variant")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return self.parts[0].n

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.parts)


def cochain_report(f: Cochain, witness_limit: int = DEFAULT_WITNESS_LIMIT) -> AxiomReport:
    """Check equivariance, pair antisymmetry and (if cyclic) the trailing cyclic sum."""
    t = f.coeffs
    a, b = f.g.twist, f.v.twist
    rep = AxiomReport()
    lhs = np.tensordot(t, b, axes=([t.ndim - 1], [1]))
    rhs = apply_ins(t, a, range(f.arity))
    rep.record("equivariance", lhs, rhs, 1, witness_limit)
    for k in range(f.n - 1):
        sym = t + np.swapaxes(t, 2 * k, 2 * k + 1)
        rep.record(f"pair-antisymmetry[{k}]", sym, np.zeros_like(sym), 1, witness_limit)
    if f.cyclic and f.n >= 2:
        k = t.ndim - 4
        cyc = t + np.moveaxis(t, (k, k + 1, k + 2), (k + 2, k, k + 1)) + np.moveaxis(
            t, (k, k + 1, k + 2), (k + 1, k + 2, k)
        )
        rep.record("cyclic", cyc, np.zeros_like(cyc), 1, witness_limit)
    return rep


# ---------------------------------------------------------------------------
# bases


def _wedge2(a: np.ndarray, pairs: Sequence[tuple[int, int]]) -> np.ndarray:
    """``W[q, p]``: coefficient of e_q in (alpha ^ alpha)(e_p) in the ``i < j`` pair basis."""
    w = zeros(len(pairs), len(pairs))
    for col, (i, j) in enumerate(pairs):
        for row, (x, y) in enumerate(pairs):
            w[row, col] = a[x, i] * a[y, j] - a[y, i] * a[x, j]
    return w


def _kron(*ms: np.ndarray) -> np.ndarray:
    out = np.ones((1, 1), dtype=object)
    for m in ms:
        out = np.kron(out, m)
    return out


def _is_identity(m: np.ndarray) -> bool:
    return bool(np.all(m == identity(m.shape[0])))


def _is_diagonal(m: np.ndarray) -> bool:
    return not np.any(m[~np.eye(m.shape[0], dtype=bool)] != 0)


@dataclass(frozen=True, eq=False)
class CochainBasis:
    """Coordinates on a constrained cochain space.

    ``vectors`` holds the basis in reduced coordinates (pairs stored as
    ``i < j``); it is in reduced row echelon form relative to ``free``, so the
    coordinates of any member are its reduced entries at the free columns.
    """

    g: HomSpace
    v: HomSpace
    n: int
    cyclic: bool
    pairs: tuple[tuple[int, int], ...]
    vectors: np.ndarray
    free: tuple[int, ...]
    constraints: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.free)

    @property
    def ambient_dim(self) -> int:
        """Number of unconstrained tensor entries."""
        return self.g.dim ** (2 * self.n - 1) * self.v.dim

    @property
    def reduced_dim(self) -> int:
        return len(self.pairs) ** (self.n - 1) * self.g.dim * self.v.dim

    @property
    def reduced_shape(self) -> tuple[int, ...]:
        return (len(self.pairs),) * (self.n - 1) + (self.g.dim, self.v.dim)

    @property
    def full_shape(self) -> tuple[int, ...]:
        return (self.g.dim,) * (2 * self.n - 1) + (self.v.dim,)

    def _expander(self) -> np.ndarray:
        d = self.g.dim
        e = zeros(d, d, len(self.pairs))
        for p, (i, j) in enumerate(self.pairs):
            e[i, j, p] = 1
            e[j, i, p] = -1
        return e

    def expand(self, reduced) -> np.ndarray:
        """Full tensor from a reduced coordinate vector."""
        r = np.asarray(reduced, dtype=object).reshape(self.reduced_shape)
        e = self._expander()
        for k in range(self.n - 1):
            # axis 2k holds pair slot k; replace it by two g axes
            r = np.moveaxis(np.tensordot(e, r, axes=([2], [2 * k])), (0, 1), (2 * k, 2 * k + 1))
        return r

    def reduce(self, t) -> np.ndarray:
        """Reduced coordinate vector of a full tensor (reads the ``i < j`` entries)."""
        t = np.asarray(t, dtype=object)
        if t.shape != self.full_shape:
            raise ValueError(f"expected a tensor of shape {self.full_shape}, got {t.shape}")
        d = self.g.dim
        flat = [i * d + j for i, j in self.pairs]
        r = t.reshape((d * d,) * (self.n - 1) + (d, self.v.dim))
        for k in range(self.n - 1):
            r = np.take(r, flat, axis=k)
        return canonicalize(r.reshape(-1))

    def coordinates(self, t, check: bool = True) -> np.ndarray:
        """Coordinates of a member tensor; raises if ``t`` is not in the subspace."""
        red = self.reduce(t)
        coords = red[list(self.free)] if self.free else zeros(0)
        if check:
            back = coords @ self.vectors if self.free else zeros(self.reduced_dim)
            full = self.expand(back)
            if np.any(canonicalize(back) != red) or np.any(full != np.asarray(t, dtype=object)):
                raise ValueError("tensor does not lie in this cochain space")
        return canonicalize(coords)

    def contains(self, t) -> bool:
        try:
            self.coordinates(t)
        except ValueError:
            return False
        return True

    def tensor(self, coords) -> np.ndarray:
        coords = np.asarray(coords, dtype=object)
        if coords.shape != (self.dim,):
            raise ValueError(f"expected {self.dim} coordinates, got shape {coords.shape}")
        if not self.dim:
            return zeros(*self.full_shape)
        return canonicalize(self.expand(coords @ self.vectors))

    def cochain(self, coords) -> Cochain:
        return Cochain(self.g, self.v, self.n, self.tensor(coords), self.cyclic)

    def basis_tensors(self) -> list[np.ndarray]:
        return [canonicalize(self.expand(v)) for v in self.vectors]


def _equivariance_rows(g: HomSpace, v: HomSpace, n: int, pairs) -> np.ndarray:
    a, b = g.twist, v.twist
    npairs, d, dv = len(pairs), g.dim, v.dim
    size = npairs ** (n - 1) * d * dv
    if _is_identity(a) and _is_identity(b):
        return zeros(0, size)
    w = _wedge2(a, pairs)
    if _is_diagonal(a) and _is_diagonal(b):
        # both sides are diagonal, so each coordinate is either free or forced to 0
        lhs = np.ones(1, dtype=object)
        for _ in range(n - 1):
            lhs = np.multiply.outer(lhs, np.diag(w))
        lhs = np.multiply.outer(np.multiply.outer(lhs, np.diag(a)), np.ones(dv, dtype=object)).reshape(-1)
        rhs = np.multiply.outer(np.ones(size // dv, dtype=object), np.diag(b)).reshape(-1)
        rows = []
        for idx in np.nonzero(lhs != rhs)[0]:
            r = zeros(size)
            r[idx] = 1
            rows.append(r)
        return np.array(rows, dtype=object).reshape(len(rows), size)
    ip, idd, iv = identity(npairs), identity(d), identity(dv)
    beta_side = _kron(*([ip] * (n - 1)), idd, b)
    alpha_side = _kron(*([w.T] * (n - 1)), a.T, iv)
    return beta_side - alpha_side


def _cyclic_rows(g: HomSpace, v: HomSpace, n: int, pairs) -> np.ndarray:
    npairs, d, dv = len(pairs), g.dim, v.dim
    size = npairs ** (n - 1) * d * dv
    if n < 2 or d < 3:
        return zeros(0, size)
    pid = {p: k for k, p in enumerate(pairs)}
    shape = (npairs,) * (n - 1) + (d, dv)
    rows = []
    for prefix in itertools.product(range(npairs), repeat=n - 2):
        for x, y, z in itertools.combinations(range(d), 3):
            for out in range(dv):
                r = zeros(size)
                # f(x,y,z) + f(y,z,x) + f(z,x,y), with (z,x) stored as -(x,z)
                r[np.ravel_multi_index(prefix + (pid[(x, y)], z, out), shape)] += 1
                r[np.ravel_multi_index(prefix + (pid[(y, z)], x, out), shape)] += 1
                r[np.ravel_multi_index(prefix + (pid[(x, z)], y, out), shape)] -= 1
                rows.append(r)
    return np.array(rows, dtype=object).reshape(len(rows), size)


def cochain_space_basis(
    g: HomSpace, v: HomSpace, n: int, cyclic: bool = True, max_degree: int = DEFAULT_MAX_DEGREE
) -> CochainBasis:
    """Deterministic basis of the degree-``n`` cochains (cyclic or not)."""
    _check_degree(n, max_degree)
    pairs = tuple(itertools.combinations(range(g.dim), 2))
    rows = _equivariance_rows(g, v, n, pairs)
    if cyclic:
        rows = np.concatenate([rows, _cyclic_rows(g, v, n, pairs)], axis=0)
    size = len(pairs) ** (n - 1) * g.dim * v.dim
    rows = rows.reshape(-1, size)
    if rows.shape[0]:
        rows = rows[np.any(rows != 0, axis=1)]
    kernel = kernel_basis(rows) if rows.shape[0] else [_unit(size, k) for k in range(size)]
    vectors = np.array(kernel, dtype=object).reshape(len(kernel), size)
    if rows.shape[0]:
        pivots = set(rref(rows)[1])
        free = tuple(k for k in range(size) if k not in pivots)
    else:
        free = tuple(range(size))
    return CochainBasis(g, v, n, cyclic, pairs, canonicalize(vectors), free, canonicalize(rows))


def _unit(size: int, k: int) -> np.ndarray:
    u = zeros(size)
    u[k] = 1
    return u


# ---------------------------------------------------------------------------
# coboundary


def _pair_labels(idx: Sequence[int]) -> list[int]:
    return [x for i in idx for x in (2 * i, 2 * i + 1)]


def coboundary_displayed(f: np.ndarray, n: int, c: np.ndarray, theta: np.ndarray, alpha: np.ndarray) -> np.ndarray:
    """The coboundary expression exactly as displayed, before any degree sign.

    ``f`` is a full degree-``n`` tensor; returns the full degree-``n+1`` tensor.
    """
    f = np.asarray(f, dtype=object)
    d = alpha.shape[0]
    dv = theta.shape[2]
    cl, o, m, u = 2 * n, 2 * n + 1, 2 * n + 2, 2 * n + 3
    out_labels = list(range(2 * n + 2))
    a_ = lambda i: 2 * i  # noqa: E731
    b_ = lambda i: 2 * i + 1  # noqa: E731
    theta_tw = apply_ins(theta, matrix_power(alpha, n - 1), (0, 1))
    d_tw = _d_of(theta_tw)
    head = _pair_labels(range(n - 1))
    res = zeros(*((d,) * (2 * n + 1) + (dv,)))

    res = res + np.einsum(theta_tw, [b_(n - 1), cl, o, u], f, head + [a_(n - 1), u], out_labels)
    res = res - np.einsum(theta_tw, [a_(n - 1), cl, o, u], f, head + [b_(n - 1), u], out_labels)
    for i in range(n):
        s = (-1) ** (i + 1 + n)
        rest = _pair_labels(k for k in range(n) if k != i)
        res = res + s * np.einsum(d_tw, [a_(i), b_(i), o, u], f, rest + [cl, u], out_labels)
    f_pairs = apply_ins(f, alpha, range(2 * n - 2))
    for i in range(n):
        s = (-1) ** (i + 1 + n + 1)
        for j in range(i + 1, n):
            slot = j - 1  # position of pair j once pair i is removed
            ff = apply_ins(f, alpha, [ax for ax in range(2 * n - 1) if ax != 2 * slot])
            labels = []
            for k in range(n):
                if k == i:
                    continue
                labels += [m, b_(k)] if k == j else [a_(k), b_(k)]
            x = np.einsum(ff, labels + [cl, o], c, [a_(i), b_(i), a_(j), m], out_labels)
            res = res + s * (x - np.swapaxes(x, a_(j), b_(j)))
        rest = _pair_labels(k for k in range(n) if k != i)
        res = res + s * np.einsum(f_pairs, rest + [m, o], c, [a_(i), b_(i), cl, m], out_labels)
    return canonicalize(res)


def coboundary(f: np.ndarray, n: int, c: np.ndarray, theta: np.ndarray, alpha: np.ndarray) -> np.ndarray:
    """δf for a degree-``n`` tensor, normalized so that δf = (-1)^(n-1)[π, f] on adjoint coefficients."""
    out = coboundary_displayed(f, n, c, theta, alpha)
    return out if n % 2 == 1 else -out


def _components(c, r, which: int):
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    return c.brackets[which - 1].c, r.thetas[which - 1]


def _delta_from_tensors(src: CochainBasis, dst: CochainBasis, bracket: np.ndarray, theta: np.ndarray) -> np.ndarray:
    cols = []
    for t in src.basis_tensors():
        img = coboundary(t, src.n, bracket, theta, src.g.twist)
        try:
            cols.append(dst.coordinates(img))
        except ValueError as exc:
            raise ValueError(f"coboundary of a degree-{src.n} basis cochain left the target space") from exc
    m = zeros(dst.dim, src.dim)
    for j, col in enumerate(cols):
        m[:, j] = col
    return m


def _spaces(c, r):
    if r.g.dim != c.dim:
        raise ValueError("representation and algebra dimensions differ")
    return c.space, r.v


def delta_matrix(
    c: CompatibleHomLts,
    r: CompatibleRepresentation,
    which: int,
    n: int,
    bases: tuple[CochainBasis, CochainBasis] | None = None,
    max_degree: int = DEFAULT_MAX_DEGREE,
) -> np.ndarray:
    """Matrix of δ_which from degree-n to degree-(n+1) coordinates."""
    g, v = _spaces(c, r)
    if bases is None:
        bases = (
            cochain_space_basis(g, v, n, True, max_degree),
            cochain_space_basis(g, v, n + 1, True, max_degree),
        )
    bracket, theta = _components(c, r, which)
    return _delta_from_tensors(bases[0], bases[1], bracket, theta)


class _DeltaCache:
    """Bases and δ matrices for one (c, r) pair."""

    def __init__(self, c, r, max_degree: int):
        self.c, self.r, self.max_degree = c, r, max_degree
        self.g, self.v = _spaces(c, r)
        self._bases: dict[int, CochainBasis] = {}
        self._deltas: dict[tuple[int, int], np.ndarray] = {}

    def basis(self, n: int) -> CochainBasis:
        if n not in self._bases:
            self._bases[n] = cochain_space_basis(self.g, self.v, n, True, self.max_degree)
        return self._bases[n]

    def delta(self, which: int, n: int) -> np.ndarray:
        key = (which, n)
        if key not in self._deltas:
            bracket, theta = _components(self.c, self.r, which)
            self._deltas[key] = _delta_from_tensors(self.basis(n), self.basis(n + 1), bracket, theta)
        return self._deltas[key]

    def delta_c(self, n: int) -> np.ndarray:
        d1, d2 = self.delta(1, n), self.delta(2, n)
        rows, cols = d1.shape
        out = zeros((n + 1) * rows, n * cols)
        for j in range(n):
            out[j * rows : (j + 1) * rows, j * cols : (j + 1) * cols] = d1
            out[(j + 1) * rows : (j + 2) * rows, j * cols : (j + 1) * cols] = d2
        return out


def delta_c_matrix(
    c: CompatibleHomLts, r: CompatibleRepresentation, n: int, max_degree: int = DEFAULT_MAX_DEGREE
) -> np.ndarray:
    """Staircase matrix of δ_c from n copies of degree n to n+1 copies of degree n+1."""
    _check_degree(n + 1, max_degree)
    return _DeltaCache(c, r, max_degree).delta_c(n)


@dataclass
class CohomologyReport:
    n: int
    dim_cochains: int
    dim_cocycles: int
    dim_coboundaries: int
    basis: CochainBasis
    representative_coords: list[np.ndarray] = field(default_factory=list)
    _image_rref: tuple[np.ndarray, list[int]] | None = field(default=None, repr=False)

    @property
    def dim_H(self) -> int:
        return self.dim_cocycles - self.dim_coboundaries

    @property
    def representatives(self) -> list[CompatibleCochain]:
        k = self.basis.dim
        out = []
        for vec in self.representative_coords:
            parts = tuple(self.basis.cochain(vec[j * k : (j + 1) * k]) for j in range(self.n))
            out.append(CompatibleCochain(parts))
        return out

    def to_dict(self) -> dict:
        from .linalg import format_rational

        def sparse(vec):
            return [[int(i), format_rational(vec[i])] for i in np.nonzero(vec != 0)[0]]

        return {
            "degree": self.n,
            "dim_cochains": self.dim_cochains,
            "dim_cocycles": self.dim_cocycles,
            "dim_coboundaries": self.dim_coboundaries,
            "dim_H": self.dim_H,
            "cochain_basis": {
                "dim": self.basis.dim,
                "copies": self.n,
                "pairs": [list(p) for p in self.basis.pairs],
                "vectors": [sparse(v) for v in self.basis.vectors],
            },
            "representatives": [sparse(v) for v in self.representative_coords],
        }


def _reduce_mod(vec: np.ndarray, image: tuple[np.ndarray, list[int]]) -> np.ndarray:
    red, pivots = image
    out = vec.copy()
    for row, p in enumerate(pivots):
        if out[p] != 0:
            out = out - out[p] * red[row]
    return canonicalize(out)


def cohomology(
    c: CompatibleHomLts, r: CompatibleRepresentation, n: int, max_degree: int = DEFAULT_MAX_DEGREE
) -> CohomologyReport:
    """Dimensions of Z^n, B^n, H^n for δ_c, with deterministic representatives.

    B^1 is zero by convention. Representatives are kernel basis vectors reduced
    modulo the image of δ_c, kept greedily while independent.
    """
    _check_degree(n, max_degree)
    # the cap bounds the requested degree; the n+1 space is working storage
    cache = _DeltaCache(c, r, max_degree + 1)
    dc = cache.delta_c(n)
    total = dc.shape[1]
    z = kernel_basis(dc) if dc.shape[0] else [_unit(total, k) for k in range(total)]
    if n >= 2:
        prev = cache.delta_c(n - 1)
        image_rows = prev.T[np.any(prev.T != 0, axis=1)]
    else:
        image_rows = zeros(0, total)
    if image_rows.shape[0]:
        red, piv = rref(image_rows)
        image = (red[: len(piv)], piv)
    else:
        image = (zeros(0, total), [])
    reps: list[np.ndarray] = []
    span = zeros(0, total)
    for vec in z:
        rv = _reduce_mod(vec, image)
        if not np.any(rv != 0):
            continue
        trial = np.concatenate([span, rv.reshape(1, -1)], axis=0)
        if rank(trial) > span.shape[0]:
            reps.append(rv)
            span = trial
    return CohomologyReport(
        n=n,
        dim_cochains=total,
        dim_cocycles=len(z),
        dim_coboundaries=len(image[1]),
        basis=cache.basis(n),
        representative_coords=reps,
        _image_rref=image,
    )


def class_coordinates(report: CohomologyReport, coords) -> np.ndarray:
    """Coordinates in the representative basis of the class of a cocycle (given in δ_c coordinates)."""
    vec = canonicalize(np.asarray(coords, dtype=object).reshape(-1))
    image = report._image_rref if report._image_rref is not None else (zeros(0, vec.shape[0]), [])
    rv = _reduce_mod(vec, image)
    if not report.representative_coords:
        if np.any(rv != 0):
            raise ValueError("vector is not a cocycle")
        return zeros(0)
    reps = np.array(report.representative_coords, dtype=object).T
    sol = solve(reps, rv)
    if sol is None:
        raise ValueError("vector is not a cocycle")
    return sol


# ---------------------------------------------------------------------------
# graded bracket


def diamond(p_t: np.ndarray, p: int, q_t: np.ndarray, q: int, alpha: np.ndarray) -> np.ndarray:
    """P ⋄ Q for P of degree p+1 and Q of degree q+1 (full tensors); α^q twists P's other arguments."""
    d = alpha.shape[0]
    total = p + q
    cl, o, m = 2 * total, 2 * total + 1, 2 * total + 2
    out_labels = list(range(2 * total + 2))
    aq = matrix_power(alpha, q)
    res = zeros(*((d,) * (2 * total + 1) + (d,)))

    pt = apply_ins(p_t, aq, range(2 * p))
    sign_pq = (-1) ** (p * q)
    for sigma in unshuffles(p, q):
        s = sign_pq * sigma.sign
        pl = _pair_labels(sigma.image[:p]) + [m, o]
        ql = _pair_labels(sigma.image[p:]) + [cl, m]
        res = res + s * np.einsum(pt, pl, q_t, ql, out_labels)

    for k in range(1, p + 1):
        slot = 2 * (k - 1) + 1
        pk = apply_ins(p_t, aq, [ax for ax in range(2 * p + 1) if ax != slot])
        kk = k + q - 1
        tail = _pair_labels(range(kk + 1, total))
        for sigma in unshuffles(k - 1, q):
            s = (-1) ** ((k - 1) * q) * sigma.sign
            pl = _pair_labels(sigma.image[: k - 1]) + [2 * kk, m] + tail + [cl, o]
            ql = _pair_labels(sigma.image[k - 1 :]) + [2 * kk + 1, m]
            x = np.einsum(pk, pl, q_t, ql, out_labels)
            res = res + s * (x - np.swapaxes(x, 2 * kk, 2 * kk + 1))
    return canonicalize(res)


def _bracket_tensors(p_t, p, q_t, q, alpha) -> np.ndarray:
    return canonicalize(diamond(p_t, p, q_t, q, alpha) - (-1) ** (p * q) * diamond(q_t, q, p_t, p, alpha))


def graded_bracket(P: Cochain, Q: Cochain) -> Cochain:
    """[P, Q] = P⋄Q - (-1)^{pq} Q⋄P for g-valued cochains of degrees p+1, q+1."""
    for x in (P, Q):
        if x.g.dim != x.v.dim or not np.all(x.g.twist == x.v.twist):
            raise ValueError("graded bracket needs g-valued cochains (V = g, beta = alpha)")
    if P.g != Q.g:
        raise ValueError("cochains live on different twisted spaces")
    p, q = P.n - 1, Q.n - 1
    t = _bracket_tensors(P.coeffs, p, Q.coeffs, q, P.g.twist)
    return Cochain(P.g, P.g, p + q + 1, t, cyclic=False)


# ---------------------------------------------------------------------------
# Maurer-Cartan checks


def _pi(space: HomSpace, b: TriBracket) -> Cochain:
    return Cochain.from_bracket(space, b)


def _record_zero(rep: AxiomReport, name: str, t: np.ndarray, limit: int) -> None:
    rep.record(name, t, np.zeros_like(t), 1, limit)


def mc_self_report(h: HomLts, witness_limit: int = DEFAULT_WITNESS_LIMIT) -> AxiomReport:
    """Membership of π in C²_H (equivariance) and [π, π] = 0."""
    pi = _pi(h.space, h.bracket)
    rep = AxiomReport()
    rep.extend(_equivariance_only(pi, witness_limit), "C2H:")
    _record_zero(rep, "[pi,pi]", graded_bracket(pi, pi).coeffs, witness_limit)
    return rep


def _equivariance_only(f: Cochain, limit: int) -> AxiomReport:
    full = cochain_report(Cochain(f.g, f.v, f.n, f.coeffs, cyclic=False), limit)
    out = AxiomReport()
    out.checked = [a for a in full.checked if a == "equivariance"]
    out.counts = {a: full.counts[a] for a in out.checked}
    out.failures = [x for x in full.failures if x.axiom == "equivariance"]
    return out


def mc_self_check(h: HomLts) -> bool:
    return mc_self_report(h, 1).passed


def mc_pair_report(c: CompatibleHomLts, witness_limit: int = DEFAULT_WITNESS_LIMIT) -> AxiomReport:
    p1, p2 = _pi(c.space, c.b1), _pi(c.space, c.b2)
    rep = AxiomReport()
    rep.extend(_equivariance_only(p1, witness_limit), "C2H:bracket1:")
    rep.extend(_equivariance_only(p2, witness_limit), "C2H:bracket2:")
    _record_zero(rep, "[pi1,pi1]", graded_bracket(p1, p1).coeffs, witness_limit)
    _record_zero(rep, "[pi1,pi2]", graded_bracket(p1, p2).coeffs, witness_limit)
    _record_zero(rep, "[pi2,pi2]", graded_bracket(p2, p2).coeffs, witness_limit)
    return rep


def mc_pair_check(c: CompatibleHomLts) -> bool:
    return mc_pair_report(c, 1).passed


def twisted_mc_report(
    c: CompatibleHomLts, t1: TriBracket, t2: TriBracket, witness_limit: int = DEFAULT_WITNESS_LIMIT
) -> AxiomReport:
    """MC test for (π₁+t₁, π₂+t₂), alongside the twisted MC equations for (t₁, t₂).

    The twisted equations are [π_i, t_i] + ½[t_i, t_i] = 0 and
    [π₁, t₂] + [π₂, t₁] + [t₁, t₂] = 0. When (π₁, π₂) is itself a Maurer-Cartan
    pair the two verdicts must coincide; a mismatch is recorded as ``equivalence``.
    """
    total = CompatibleHomLts(c.space, c.b1 + t1, c.b2 + t2)
    rep = AxiomReport()
    tot = mc_pair_report(total, witness_limit)
    rep.extend(tot, "total:")
    p1, p2 = _pi(c.space, c.b1), _pi(c.space, c.b2)
    q1, q2 = _pi(c.space, t1), _pi(c.space, t2)
    half = Fraction(1, 2)
    tw = AxiomReport()
    tw.extend(_equivariance_only(q1, witness_limit), "C2H:t1:")
    tw.extend(_equivariance_only(q2, witness_limit), "C2H:t2:")
    _record_zero(
        tw, "[pi1,t1]+1/2[t1,t1]", graded_bracket(p1, q1).coeffs + half * graded_bracket(q1, q1).coeffs, witness_limit
    )
    _record_zero(
        tw, "[pi2,t2]+1/2[t2,t2]", graded_bracket(p2, q2).coeffs + half * graded_bracket(q2, q2).coeffs, witness_limit
    )
    _record_zero(
        tw,
        "[pi1,t2]+[pi2,t1]+[t1,t2]",
        graded_bracket(p1, q2).coeffs + graded_bracket(p2, q1).coeffs + graded_bracket(q1, q2).coeffs,
        witness_limit,
    )
    rep.extend(tw, "twisted:")
    if mc_pair_check(c):
        agree = tot.passed == tw.passed
        rep.record(
            "equivalence",
            np.array(agree, dtype=object),
            np.array(True, dtype=object),
            0,
            witness_limit,
        )
    return rep


def twisted_mc_check(c: CompatibleHomLts, t1: TriBracket, t2: TriBracket) -> bool:
    """True iff (π₁+t₁, π₂+t₂) is a Maurer-Cartan pair."""
    rep = twisted_mc_report(c, t1, t2, 1)
    return all(not rep.counts.get(a, 0) for a in rep.checked if a.startswith("total:"))


# ---------------------------------------------------------------------------
# lifting and the sum complex


def lift_cochain(f: Cochain, c: CompatibleHomLts, r: CompatibleRepresentation) -> Cochain:
    """Lift of a V-valued cochain to a (g + V)-valued cochain on g + V."""
    d, dv = c.dim, r.v.dim
    if f.g.dim != d or f.v.dim != dv:
        raise ValueError("cochain does not match the algebra and representation")
    big = HomSpace(d + dv, direct_sum_twist(c.alpha, r.v.twist))
    out = zeros(*((d + dv,) * (2 * f.n)))
    idx = (slice(0, d),) * (2 * f.n - 1) + (slice(d, d + dv),)
    out[idx] = f.coeffs
    return Cochain(big, big, f.n, out, cyclic=False)


def sum_structures(c: CompatibleHomLts, r: CompatibleRepresentation) -> tuple[HomLts, Representation]:
    """g₊ = (g, b₁ + b₂) and V₊ = (V, θ₁ + θ₂)."""
    return HomLts(c.space, c.b1 + c.b2), r.combination(1, 1)


def phi_chain_map(fs: CompatibleCochain) -> Cochain:
    """Φ(f₁, ..., f_n) = f₁ + ... + f_n."""
    out = fs.parts[0]
    for p in fs.parts[1:]:
        out = out + p
    return out


def phi_matrix(basis: CochainBasis) -> np.ndarray:
    """Matrix of Φ_n in δ_c coordinates: n identity blocks side by side."""
    k = basis.dim
    return np.concatenate([identity(k)] * basis.n, axis=1) if k else zeros(0, 0)


def delta_plus_matrix(
    c: CompatibleHomLts, r: CompatibleRepresentation, n: int, max_degree: int = DEFAULT_MAX_DEGREE
) -> np.ndarray:
    """δ of the sum structure (g₊, V₊) from degree n to n+1, built directly."""
    gp, vp = sum_structures(c, r)
    src = cochain_space_basis(c.space, r.v, n, True, max_degree)
    dst = cochain_space_basis(c.space, r.v, n + 1, True, max_degree)
    return _delta_from_tensors(src, dst, gp.bracket.c, vp.theta)
