"""Hom-Lie triple systems, compatible pairs and their representations.

Everything is stored through structure constants in a fixed basis ``e_0..e_{d-1}``:

* a twist ``alpha`` is a ``d x d`` matrix with ``alpha e_j = sum_i alpha[i, j] e_i``;
* a triple bracket is a tensor ``c`` with ``[e_i, e_j, e_k] = sum_l c[i, j, k, l] e_l``;
* a representation ``theta`` is a tensor with
  ``theta(e_i, e_j) e_w = sum_v theta[i, j, v, w] e_v``.

The verifiers evaluate every axiom on all basis tuples (multilinearity makes
that sufficient) and return an :class:`AxiomReport` listing failing tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ._tensor import apply_in, apply_ins, apply_out, first_nonzero
from .linalg import canonicalize, format_rational, identity, matrix, rank, rational, zeros

__all__ = [
    "DEFAULT_WITNESS_LIMIT",
    "Failure",
    "AxiomReport",
    "HomSpace",
    "TriBracket",
    "HomLts",
    "CompatibleHomLts",
    "Representation",
    "CompatibleRepresentation",
    "verify_hom_lts",
    "verify_compatible",
    "sum_bracket",
    "verify_representation",
    "verify_compatible_representation",
    "semidirect_product",
    "adjoint_representation",
    "from_hom_lie_algebra",
    "from_compatible_hom_lie",
    "nijenhuis_deformed_bracket",
    "is_nijenhuis",
    "is_homomorphism",
    "is_isomorphism",
]

DEFAULT_WITNESS_LIMIT = 5


def _readonly(a: np.ndarray) -> np.ndarray:
    a = canonicalize(a)
    a.flags.writeable = False
    return a


def _as_square(m, n: int | None = None, what: str = "matrix") -> np.ndarray:
    m = matrix(m) if not isinstance(m, np.ndarray) else canonicalize(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{what} must be square, got shape {m.shape}")
    if n is not None and m.shape[0] != n:
        raise ValueError(f"{what} must be {n}x{n}, got {m.shape[0]}x{m.shape[1]}")
    return m


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Failure:
    axiom: str
    witness: tuple[int, ...]
    lhs: np.ndarray
    rhs: np.ndarray

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "witness": list(self.witness),
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
        }


def _jsonable(a):
    a = np.asarray(a, dtype=object)
    if a.ndim == 0:
        return format_rational(a.item())
    return [_jsonable(x) for x in a]


@dataclass
class AxiomReport:
    """Outcome of an exhaustive check. Truthy exactly when nothing failed."""

    checked: list[str] = field(default_factory=list)
    failures: list[Failure] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.passed

    def failed_axioms(self) -> list[str]:
        return [a for a in self.checked if self.counts.get(a, 0)]

    def record(self, axiom: str, lhs, rhs, out_ndim: int, limit: int) -> None:
        """Compare two tensors whose last ``out_ndim`` axes are the value."""
        lhs = np.asarray(lhs, dtype=object)
        rhs = np.asarray(rhs, dtype=object)
        self.checked.append(axiom)
        diff = lhs != rhs
        if out_ndim:
            diff = np.any(diff, axis=tuple(range(diff.ndim - out_ndim, diff.ndim)))
        count = int(np.count_nonzero(diff))
        self.counts[axiom] = count
        if not count:
            return
        if diff.ndim == 0:
            self.failures.append(Failure(axiom, (), lhs, rhs))
            return
        for w in first_nonzero(diff, limit):
            self.failures.append(Failure(axiom, w, lhs[w], rhs[w]))

    def extend(self, other: "AxiomReport", prefix: str = "") -> "AxiomReport":
        for a in other.checked:
            self.checked.append(prefix + a)
            self.counts[prefix + a] = other.counts.get(a, 0)
        for f in other.failures:
            self.failures.append(Failure(prefix + f.axiom, f.witness, f.lhs, f.rhs))
        return self

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "axioms": [
                {"id": a, "passed": not self.counts.get(a, 0), "failing_tuples": self.counts.get(a, 0)}
                for a in self.checked
            ],
            "failures": [f.to_dict() for f in self.failures],
        }


# ---------------------------------------------------------------------------
# structures


@dataclass(frozen=True, eq=False)
class HomSpace:
    """A vector space with a twisting linear map (not required invertible)."""

    dim: int
    twist: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "twist", _readonly(_as_square(self.twist, self.dim, "twist")))

    @classmethod
    def untwisted(cls, dim: int) -> "HomSpace":
        return cls(dim, identity(dim))

    @classmethod
    def diagonal(cls, entries: Sequence) -> "HomSpace":
        m = zeros(len(entries), len(entries))
        for i, x in enumerate(entries):
            m[i, i] = rational(x)
        return cls(len(entries), m)

    def is_regular(self) -> bool:
        return rank(self.twist) == self.dim

    def __eq__(self, other):
        if not isinstance(other, HomSpace):
            return NotImplemented
        return self.dim == other.dim and bool(np.all(self.twist == other.twist))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class TriBracket:
    """Structure constants of a trilinear bracket, antisymmetric in its first two slots."""

    c: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.c, dtype=object)
        if c.ndim != 4 or len(set(c.shape)) != 1:
            raise ValueError(f"bracket tensor must have shape (d, d, d, d), got {c.shape}")
        c = canonicalize(c)
        bad = c != -c.transpose(1, 0, 2, 3)
        if np.any(bad):
            i, j, k, l = first_nonzero(bad, 1)[0]
            raise ValueError(
                "bracket is not antisymmetric in its first two arguments: "
                f"c[{i},{j},{k},{l}] = {format_rational(c[i, j, k, l])} but "
                f"c[{j},{i},{k},{l}] = {format_rational(c[j, i, k, l])}"
            )
        object.__setattr__(self, "c", _readonly(c))

    @property
    def dim(self) -> int:
        return self.c.shape[0]

    @classmethod
    def zero(cls, dim: int) -> "TriBracket":
        return cls(zeros(dim, dim, dim, dim))

    @classmethod
    def antisymmetrized(cls, c) -> "TriBracket":
        c = np.asarray(c, dtype=object)
        return cls((c - c.transpose(1, 0, 2, 3)) * Fraction(1, 2))

    @classmethod
    def from_entries(cls, dim: int, entries: Iterable[Sequence]) -> "TriBracket":
        """Build from sparse ``(i, j, k, l, value)`` entries.

        The mirrored entry ``(j, i, k, l, -value)`` is implied; giving it
        explicitly is allowed only if it agrees. Repeated entries are an error.
        """
        c = zeros(dim, dim, dim, dim)
        given: dict[tuple[int, int, int, int], object] = {}
        for n, entry in enumerate(entries):
            if len(entry) != 5:
                raise ValueError(f"entry {n}: expected [i, j, k, l, value], got {entry!r}")
            *idx, val = entry
            idx = tuple(int(x) for x in idx)
            if any(not 0 <= x < dim for x in idx):
                raise ValueError(f"entry {n}: index {list(idx)} out of range for dimension {dim}")
            val = rational(val)
            if idx in given:
                raise ValueError(f"entry {n}: duplicate entry for index {list(idx)}")
            given[idx] = val
            i, j, k, l = idx
            if i == j and val != 0:
                raise ValueError(f"entry {n}: [e{i}, e{i}, -] must vanish")
            mirror = (j, i, k, l)
            if mirror in given and given[mirror] != -val:
                raise ValueError(f"entry {n}: conflicts with the antisymmetric entry {list(mirror)}")
            c[i, j, k, l] = val
            c[j, i, k, l] = -val
        return cls(c)

    def entries(self) -> list[tuple[int, int, int, int, object]]:
        """Nonzero entries with ``i < j`` (the rest follow by antisymmetry)."""
        out = []
        for idx in np.argwhere(self.c != 0):
            i, j, k, l = (int(x) for x in idx)
            if i < j:
                out.append((i, j, k, l, self.c[i, j, k, l]))
        return out

    def evaluate(self, x, y, z) -> np.ndarray:
        return np.einsum("i,j,k,ijkl->l", *(np.asarray(v, dtype=object) for v in (x, y, z)), self.c)

    def is_zero(self) -> bool:
        return not np.any(self.c != 0)

    def scale(self, k) -> "TriBracket":
        return TriBracket(self.c * rational(k))

    def __add__(self, other: "TriBracket") -> "TriBracket":
        return TriBracket(self.c + other.c)

    def __sub__(self, other: "TriBracket") -> "TriBracket":
        return TriBracket(self.c - other.c)

    def __neg__(self) -> "TriBracket":
        return TriBracket(-self.c)

    def __eq__(self, other):
        if not isinstance(other, TriBracket):
            return NotImplemented
        return self.c.shape == other.c.shape and bool(np.all(self.c == other.c))

    __hash__ = None


def _check_dims(space: HomSpace, *brackets: TriBracket) -> None:
    for b in brackets:
        if b.dim != space.dim:
            raise ValueError(f"bracket of dimension {b.dim} on a space of dimension {space.dim}")


@dataclass(frozen=True, eq=False)
class HomLts:
    """A twisted space with one triple bracket; validity is decided by :func:`verify_hom_lts`."""

    space: HomSpace
    bracket: TriBracket

    def __post_init__(self):
        _check_dims(self.space, self.bracket)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def alpha(self) -> np.ndarray:
        return self.space.twist

    @property
    def brackets(self) -> tuple[TriBracket, ...]:
        return (self.bracket,)


@dataclass(frozen=True, eq=False)
class CompatibleHomLts:
    space: HomSpace
    b1: TriBracket
    b2: TriBracket

    def __post_init__(self):
        _check_dims(self.space, self.b1, self.b2)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def alpha(self) -> np.ndarray:
        return self.space.twist

    @property
    def brackets(self) -> tuple[TriBracket, TriBracket]:
        return (self.b1, self.b2)

    def component(self, i: int) -> HomLts:
        return HomLts(self.space, self.brackets[i - 1])


@dataclass(frozen=True, eq=False)
class Representation:
    """``theta[i, j]`` is the operator theta(e_i, e_j) on V; D is derived, never stored."""

    g: HomSpace
    v: HomSpace
    theta: np.ndarray

    def __post_init__(self):
        t = canonicalize(np.asarray(self.theta, dtype=object))
        want = (self.g.dim, self.g.dim, self.v.dim, self.v.dim)
        if t.shape != want:
            raise ValueError(f"theta must have shape {want}, got {t.shape}")
        object.__setattr__(self, "theta", _readonly(t))

    @classmethod
    def zero(cls, g: HomSpace, v: HomSpace) -> "Representation":
        return cls(g, v, zeros(g.dim, g.dim, v.dim, v.dim))

    @classmethod
    def from_grid(cls, g: HomSpace, v: HomSpace, grid) -> "Representation":
        t = zeros(g.dim, g.dim, v.dim, v.dim)
        for i in range(g.dim):
            for j in range(g.dim):
                t[i, j] = matrix(grid[i][j]) if not isinstance(grid[i][j], np.ndarray) else grid[i][j]
        return cls(g, v, t)

    def operator(self, i: int, j: int) -> np.ndarray:
        return self.theta[i, j]

    @property
    def d(self) -> np.ndarray:
        return _d_of(self.theta)


def _d_of(theta: np.ndarray) -> np.ndarray:
    # D(x, y) = theta(y, x) - theta(x, y)
    return theta.transpose(1, 0, 2, 3) - theta


@dataclass(frozen=True, eq=False)
class CompatibleRepresentation:
    g: HomSpace
    v: HomSpace
    theta1: np.ndarray
    theta2: np.ndarray

    def __post_init__(self):
        for name in ("theta1", "theta2"):
            rep = Representation(self.g, self.v, getattr(self, name))
            object.__setattr__(self, name, rep.theta)

    @classmethod
    def zero(cls, g: HomSpace, v: HomSpace) -> "CompatibleRepresentation":
        z = zeros(g.dim, g.dim, v.dim, v.dim)
        return cls(g, v, z, z)

    @property
    def thetas(self) -> tuple[np.ndarray, np.ndarray]:
        return (self.theta1, self.theta2)

    def component(self, i: int) -> Representation:
        return Representation(self.g, self.v, self.thetas[i - 1])

    def combination(self, k1, k2) -> Representation:
        return Representation(self.g, self.v, self.theta1 * rational(k1) + self.theta2 * rational(k2))


# ---------------------------------------------------------------------------
# algebra axioms


def _fundamental(outer: np.ndarray, inner: np.ndarray, a: np.ndarray):
    """Both sides of the twisted fundamental identity, outer bracket applied last.

    Axes of the results: (a, b, x, y, z, out).
    """
    o_first = apply_ins(outer, a, (0, 1))
    lhs = np.einsum("abmo,xyzm->abxyzo", o_first, inner)
    r1 = np.einsum("abxm,myzo->abxyzo", inner, apply_ins(outer, a, (1, 2)))
    r2 = np.einsum("abym,xmzo->abxyzo", inner, apply_ins(outer, a, (0, 2)))
    r3 = np.einsum("abzm,xymo->abxyzo", inner, o_first)
    return lhs, r1 + r2 + r3


def _cyclic_sum(c: np.ndarray) -> np.ndarray:
    return c + np.einsum("zxyl->xyzl", c) + np.einsum("yzxl->xyzl", c)


def _bracket_report(c: np.ndarray, a: np.ndarray, limit: int) -> AxiomReport:
    rep = AxiomReport()
    rep.record("multiplicativity", apply_out(c, a), apply_ins(c, a, (0, 1, 2)), 1, limit)
    rep.record("Eq-2.1", c + c.transpose(1, 0, 2, 3), np.zeros_like(c), 1, limit)
    rep.record("Eq-2.2", _cyclic_sum(c), np.zeros_like(c), 1, limit)
    lhs, rhs = _fundamental(c, c, a)
    rep.record("Eq-2.3", lhs, rhs, 1, limit)
    return rep


def verify_hom_lts(h: HomLts, witness_limit: int = DEFAULT_WITNESS_LIMIT) -> AxiomReport:
    """Check every Hom-Lts axiom on every basis tuple."""
    return _bracket_report(h.bracket.c, h.alpha, witness_limit)


def verify_compatible(c: CompatibleHomLts, witness_limit: int = DEFAULT_WITNESS_LIMIT) -> AxiomReport:
    rep = AxiomReport()
    rep.extend(_bracket_report(c.b1.c, c.alpha, witness_limit), "bracket1:")
    rep.extend(_bracket_report(c.b2.c, c.alpha, witness_limit), "bracket2:")
    l12, r12 = _fundamental(c.b1.c, c.b2.c, c.alpha)
    l21, r21 = _fundamental(c.b2.c, c.b1.c, c.alpha)
    rep.record("Eq-2.7", l12 + l21, r12 + r21, 1, witness_limit)
    return rep


def sum_bracket(c: CompatibleHomLts, k1, k2) -> HomLts:
    return HomLts(c.space, TriBracket(c.b1.c * rational(k1) + c.b2.c * rational(k2)))


# ---------------------------------------------------------------------------
# representation axioms


class _Twisted:
    """Twisted variants of a representation tensor, computed once."""

    def __init__(self, theta: np.ndarray, a: np.ndarray, b: np.ndarray):
        self.theta = theta
        self.d = _d_of(theta)
        self.theta_aa = apply_ins(theta, a, (0, 1))
        self.d_aa = _d_of(self.theta_aa)
        # theta(alpha x, m) o beta and theta(m, alpha y) o beta
        self.theta_a_beta = np.einsum("xmvu,uw->xmvw", apply_in(theta, a, 0), b)
        self.theta_beta_a = np.einsum("mbvu,uw->mbvw", apply_in(theta, a, 1), b)
        self.d_a_beta = np.einsum("xmvu,uw->xmvw", apply_in(self.d, a, 0), b)
        self.d_beta_a = np.einsum("mbvu,uw->mbvw", apply_in(self.d, a, 1), b)


def _rep_report(c: np.ndarray, r: Representation, limit: int) -> AxiomReport:
    a, b = r.g.twist, r.v.twist
    t = _Twisted(r.theta, a, b)
    rep = AxiomReport()
    rep.record(
        "Eq-2.4",
        np.einsum("xyvu,uw->xyvw", t.theta_aa, b),
        np.einsum("vu,xyuw->xyvw", b, t.theta),
        2,
        limit,
    )
    # axes (x, y, a, b, v, w)
    e25 = (
        np.einsum("abvu,xyuw->xyabvw", t.theta_aa, t.theta)
        - np.einsum("ybvu,xauw->xyabvw", t.theta_aa, t.theta)
        - np.einsum("yabm,xmvw->xyabvw", c, t.theta_a_beta)
        + np.einsum("yavu,xbuw->xyabvw", t.d_aa, t.theta)
    )
    rep.record("Eq-2.5", e25, np.zeros_like(e25), 2, limit)
    e26 = (
        np.einsum("abvu,xyuw->xyabvw", t.theta_aa, t.d)
        - np.einsum("xyvu,abuw->xyabvw", t.d_aa, t.theta)
        + np.einsum("xyam,mbvw->xyabvw", c, t.theta_beta_a)
        + np.einsum("xybm,amvw->xyabvw", c, t.theta_a_beta)
    )
    rep.record("Eq-2.6", e26, np.zeros_like(e26), 2, limit)
    return rep


def _check_rep_dims(h, r) -> None:
    if r.g.dim != h.dim:
        raise ValueError(f"representation of a {r.g.dim}-dimensional algebra given for dimension {h.dim}")
    if not np.all(r.g.twist == h.alpha):
        raise ValueError("representation is over a different twist than the algebra")


def verify_representation(
    h: HomLts, r: Representation, witness_limit: int = DEFAULT_WITNESS_LIMIT
) -> AxiomReport:
    """Check the representation axioms (items Eq-2.4 to Eq-2.6) on basis pairs and 4-tuples."""
    _check_rep_dims(h, r)
    return _rep_report(h.bracket.c, r, witness_limit)


def verify_compatible_representation(
    c: CompatibleHomLts, r: CompatibleRepresentation, witness_limit: int = DEFAULT_WITNESS_LIMIT
) -> AxiomReport:
    _check_rep_dims(c, r)
    rep = AxiomReport()
    rep.extend(_rep_report(c.b1.c, r.component(1), witness_limit), "theta1:")
    rep.extend(_rep_report(c.b2.c, r.component(2), witness_limit), "theta2:")
    a, b = c.alpha, r.v.twist
    t1 = _Twisted(r.theta1, a, b)
    t2 = _Twisted(r.theta2, a, b)
    c1, c2 = c.b1.c, c.b2.c
    # axes (a1, a2, a3, a4, v, w) written p, q, r, s
    e28 = (
        np.einsum("qrsm,pmvw->pqrsvw", c2, t1.theta_a_beta)
        + np.einsum("qrsm,pmvw->pqrsvw", c1, t2.theta_a_beta)
        + np.einsum("qsvu,pruw->pqrsvw", t1.theta_aa, t2.theta)
        + np.einsum("qsvu,pruw->pqrsvw", t2.theta_aa, t1.theta)
        - np.einsum("rsvu,pquw->pqrsvw", t1.theta_aa, t2.theta)
        - np.einsum("rsvu,pquw->pqrsvw", t2.theta_aa, t1.theta)
        - np.einsum("qrvu,psuw->pqrsvw", t1.d_aa, t2.theta)
        - np.einsum("qrvu,psuw->pqrsvw", t2.d_aa, t1.theta)
    )
    rep.record("Eq-2.8", e28, np.zeros_like(e28), 2, witness_limit)
    e29 = (
        np.einsum("pqsm,rmvw->pqrsvw", c2, t1.d_a_beta)
        + np.einsum("pqsm,rmvw->pqrsvw", c1, t2.d_a_beta)
        + np.einsum("pqrm,msvw->pqrsvw", c2, t1.d_beta_a)
        + np.einsum("pqrm,msvw->pqrsvw", c1, t2.d_beta_a)
        - np.einsum("pqvu,rsuw->pqrsvw", t1.d_aa, t2.d)
        + np.einsum("rsvu,pquw->pqrsvw", t2.d_aa, t1.d)
        + np.einsum("rsvu,pquw->pqrsvw", t1.d_aa, t2.d)
        - np.einsum("pqvu,rsuw->pqrsvw", t2.d_aa, t1.d)
    )
    rep.record("Eq-2.9", e29, np.zeros_like(e29), 2, witness_limit)
    return rep


# ---------------------------------------------------------------------------
# constructions


def semidirect_bracket(c: np.ndarray, theta: np.ndarray, extra: np.ndarray | None = None) -> np.ndarray:
    """Bracket tensor on g + V from a representation, plus an optional V-valued 2-cochain.

    [(a,u),(b,v),(c,w)] = ([a,b,c], D(a,b)w + theta(b,c)u - theta(a,c)v + extra(a,b,c)).
    """
    d = c.shape[0]
    dv = theta.shape[2]
    n = d + dv
    g, V = slice(0, d), slice(d, n)
    out = zeros(n, n, n, n)
    out[g, g, g, g] = c
    # out[a, b, d+w, d+v] = D[a, b, v, w]
    out[g, g, V, V] = _d_of(theta).transpose(0, 1, 3, 2)
    # out[d+u, b, c, d+v] = theta[b, c, v, u]
    out[V, g, g, V] = theta.transpose(3, 0, 1, 2)
    # out[a, d+u, c, d+v] = -theta[a, c, v, u]
    out[g, V, g, V] = -theta.transpose(0, 3, 1, 2)
    if extra is not None:
        out[g, g, g, V] = out[g, g, g, V] + extra
    return out


def direct_sum_twist(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    d, dv = a.shape[0], b.shape[0]
    out = zeros(d + dv, d + dv)
    out[:d, :d] = a
    out[d:, d:] = b
    return out


def semidirect_product(
    c: CompatibleHomLts, r: CompatibleRepresentation, check: bool = True
) -> CompatibleHomLts:
    """The compatible Hom-Lts on g + V built from a representation."""
    if check:
        report = verify_compatible_representation(c, r)
        if not report:
            raise ValueError(f"not a representation: failing {report.failed_axioms()}")
    space = HomSpace(c.dim + r.v.dim, direct_sum_twist(c.alpha, r.v.twist))
    b1 = TriBracket(semidirect_bracket(c.b1.c, r.theta1))
    b2 = TriBracket(semidirect_bracket(c.b2.c, r.theta2))
    return CompatibleHomLts(space, b1, b2)


def adjoint_representation(c: CompatibleHomLts) -> CompatibleRepresentation:
    """theta_i(a, b) x = [x, a, b]^i on V = g with beta = alpha."""
    t1 = np.einsum("wjkv->jkvw", c.b1.c)
    t2 = np.einsum("wjkv->jkvw", c.b2.c)
    return CompatibleRepresentation(c.space, c.space, t1, t2)


def _bilinear(b, d: int | None = None) -> np.ndarray:
    b = canonicalize(np.asarray(b, dtype=object))
    if b.ndim != 3 or len(set(b.shape)) != 1:
        raise ValueError(f"bilinear structure constants must have shape (d, d, d), got {b.shape}")
    if d is not None and b.shape[0] != d:
        raise ValueError("bilinear structure constants do not match the twist dimension")
    if np.any(b != -b.transpose(1, 0, 2)):
        raise ValueError("bilinear bracket is not antisymmetric")
    return b


def _induced(outer: np.ndarray, inner: np.ndarray, a: np.ndarray) -> np.ndarray:
    # [x, y, z] = [[x, y]_inner, alpha z]_outer
    return np.einsum("ijm,mkl->ijkl", inner, apply_in(outer, a, 1))


def from_hom_lie_algebra(b, alpha) -> HomLts:
    """Induced triple bracket [x, y, z] = [[x, y], alpha z] of a Hom-Lie algebra."""
    alpha = _as_square(alpha, what="alpha")
    b = _bilinear(b, alpha.shape[0])
    return HomLts(HomSpace(alpha.shape[0], alpha), TriBracket(_induced(b, b, alpha)))


def from_compatible_hom_lie(
    b1, b2, alpha, pairing: tuple[tuple[int, int], tuple[int, int]] = ((1, 1), (2, 2))
) -> CompatibleHomLts:
    """Induced pair of triple brackets; ``pairing[k] = (i, j)`` gives [[a, b]^j, alpha c]^i.

    Compatibility is not asserted; run :func:`verify_compatible`.
    """
    alpha = _as_square(alpha, what="alpha")
    d = alpha.shape[0]
    bil = (_bilinear(b1, d), _bilinear(b2, d))
    out = []
    for i, j in pairing:
        if i not in (1, 2) or j not in (1, 2):
            raise ValueError(f"pairing indices must be 1 or 2, got {(i, j)}")
        out.append(TriBracket(_induced(bil[i - 1], bil[j - 1], alpha)))
    return CompatibleHomLts(HomSpace(d, alpha), out[0], out[1])


def _commutes(n: np.ndarray, a: np.ndarray) -> bool:
    return bool(np.all(n @ a == a @ n))


def nijenhuis_deformed_bracket(h: HomLts, n) -> TriBracket:
    """The deformed bracket [x, y, z]_N of a Hom-Lts by a twist-commuting operator N."""
    n = _as_square(n, h.dim, "N")
    if not _commutes(n, h.alpha):
        raise ValueError("N does not commute with the twist")
    c = h.bracket.c
    two = apply_ins(c, n, (1, 2)) + apply_ins(c, n, (0, 2)) + apply_ins(c, n, (0, 1))
    one = apply_in(c, n, 0) + apply_in(c, n, 1) + apply_in(c, n, 2)
    return TriBracket(two - apply_out(one, n) + apply_out(c, n @ n))


def is_nijenhuis(h: HomLts | CompatibleHomLts, n, witness_limit: int = DEFAULT_WITNESS_LIMIT) -> AxiomReport:
    """Twist commutation plus the Nijenhuis identity for every bracket of ``h``."""
    n = _as_square(n, h.dim, "N")
    rep = AxiomReport()
    rep.record("commutes-with-twist", n @ h.alpha, h.alpha @ n, 1, witness_limit)
    n2, n3 = n @ n, n @ n @ n
    many = len(h.brackets) > 1
    for idx, b in enumerate(h.brackets, start=1):
        c = b.c
        lhs = apply_ins(c, n, (0, 1, 2))
        two = apply_ins(c, n, (1, 2)) + apply_ins(c, n, (0, 2)) + apply_ins(c, n, (0, 1))
        one = apply_in(c, n, 0) + apply_in(c, n, 1) + apply_in(c, n, 2)
        rhs = apply_out(two, n) - apply_out(one, n2) + apply_out(c, n3)
        name = f"bracket{idx}:nijenhuis-identity" if many else "nijenhuis-identity"
        rep.record(name, lhs, rhs, 1, witness_limit)
    return rep


def is_homomorphism(c1, c2, phi, witness_limit: int = DEFAULT_WITNESS_LIMIT) -> AxiomReport:
    """phi alpha_1 = alpha_2 phi and phi preserves every bracket, on all basis triples.

    ``c1``/``c2`` may be Hom-Lts or compatible Hom-Lts (with matching bracket counts).
    """
    phi = matrix(phi) if not isinstance(phi, np.ndarray) else canonicalize(phi)
    if phi.shape != (c2.dim, c1.dim):
        raise ValueError(f"phi must be {c2.dim}x{c1.dim}, got {phi.shape[0]}x{phi.shape[1]}")
    if len(c1.brackets) != len(c2.brackets):
        raise ValueError("source and target carry different numbers of brackets")
    rep = AxiomReport()
    # columns: phi(alpha_1 e_j) vs alpha_2(phi e_j)
    rep.record("twist", (phi @ c1.alpha).T, (c2.alpha @ phi).T, 1, witness_limit)
    many = len(c1.brackets) > 1
    for idx, (b1, b2) in enumerate(zip(c1.brackets, c2.brackets), start=1):
        lhs = apply_out(b1.c, phi)
        rhs = apply_ins(b2.c, phi, (0, 1, 2))
        rep.record(f"bracket{idx}" if many else "bracket", lhs, rhs, 1, witness_limit)
    return rep


def is_isomorphism(c1, c2, phi, witness_limit: int = DEFAULT_WITNESS_LIMIT) -> AxiomReport:
    rep = is_homomorphism(c1, c2, phi, witness_limit)
    phi = matrix(phi) if not isinstance(phi, np.ndarray) else canonicalize(phi)
    square = phi.shape[0] == phi.shape[1]
    nondeg = square and rank(phi) == phi.shape[0]
    rep.record("nondegenerate", np.array(nondeg, dtype=object), np.array(True, dtype=object), 0, witness_limit)
    return rep
