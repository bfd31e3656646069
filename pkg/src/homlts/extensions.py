"""Abelian extensions of compatible Hom-Lie triple systems.

Extensions are held in split coordinates g + V: basis vectors ``0..d-1`` span
a complement of V and ``d..d+dimV-1`` span V, with the canonical inclusion
and projection. :func:`from_presentation` brings any other presentation into
this form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from ._tensor import apply_ins, apply_out
from .cochains import Cochain, CohomologyReport, class_coordinates, cochain_report, cohomology, _DeltaCache
from .core import (
    DEFAULT_WITNESS_LIMIT,
    AxiomReport,
    CompatibleHomLts,
    CompatibleRepresentation,
    HomSpace,
    TriBracket,
    direct_sum_twist,
    is_isomorphism,
    semidirect_bracket,
    verify_compatible,
)
from .linalg import canonicalize, identity, matrix, rank, rref, solve, zeros

__all__ = [
    "AbelianExtension",
    "Section",
    "Equivalence",
    "build_extension",
    "from_presentation",
    "extension_report",
    "canonical_section",
    "induced_representation",
    "extract_cocycle",
    "are_cohomologous",
    "equivalence_from_xi",
    "classify_extension",
]


def _canonical_maps(d: int, dv: int) -> tuple[np.ndarray, np.ndarray]:
    i = zeros(d + dv, dv)
    p = zeros(d, d + dv)
    for k in range(dv):
        i[d + k, k] = 1
    for k in range(d):
        p[k, k] = 1
    return i, p


@dataclass(frozen=True, eq=False)
class AbelianExtension:
    total: CompatibleHomLts
    inclusion: np.ndarray
    projection: np.ndarray
    base: CompatibleHomLts
    fiber: HomSpace

    def __post_init__(self):
        d, dv = self.base.dim, self.fiber.dim
        if self.total.dim != d + dv:
            raise ValueError(f"total space has dimension {self.total.dim}, expected {d + dv}")
        i, p = _canonical_maps(d, dv)
        inc = canonicalize(np.asarray(self.inclusion, dtype=object))
        proj = canonicalize(np.asarray(self.projection, dtype=object))
        if inc.shape != i.shape or np.any(inc != i) or proj.shape != p.shape or np.any(proj != p):
            raise ValueError("extensions are stored in split coordinates; use from_presentation")
        object.__setattr__(self, "inclusion", inc)
        object.__setattr__(self, "projection", proj)

    @property
    def d(self) -> int:
        return self.base.dim

    @property
    def dv(self) -> int:
        return self.fiber.dim


@dataclass(frozen=True, eq=False)
class Section:
    sigma: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "sigma", canonicalize(np.asarray(self.sigma, dtype=object)))

    @classmethod
    def from_xi(cls, d: int, xi) -> "Section":
        """σ(a) = (a, ξ(a)) for a ``dimV x d`` matrix ξ."""
        xi = _as_matrix(xi)
        return cls(np.concatenate([identity(d), xi], axis=0))


class Equivalence(NamedTuple):
    zeta: np.ndarray
    report: AxiomReport


def _as_matrix(m) -> np.ndarray:
    if isinstance(m, Cochain):
        return m.as_map()
    return matrix(m) if not isinstance(m, np.ndarray) else canonicalize(m)


def _mu_tensor(m, d: int, dv: int) -> np.ndarray:
    t = m.coeffs if isinstance(m, Cochain) else canonicalize(np.asarray(m, dtype=object))
    if t.shape != (d, d, d, dv):
        raise ValueError(f"a 2-cochain needs shape {(d, d, d, dv)}, got {t.shape}")
    return t


def _check_two_cochain(c: CompatibleHomLts, v: HomSpace, t: np.ndarray, name: str) -> None:
    rep = cochain_report(Cochain(c.space, v, 2, t, cyclic=True), 1)
    if not rep:
        raise ValueError(f"{name} is not a cyclic equivariant 2-cochain: failing {rep.failed_axioms()}")


def build_extension(c: CompatibleHomLts, r: CompatibleRepresentation, mu: Sequence) -> AbelianExtension:
    """The extension on g + V with brackets twisted by the V-valued 2-cochains μ₁, μ₂."""
    d, dv = c.dim, r.v.dim
    if len(mu) != 2:
        raise ValueError("mu must be a pair of 2-cochains")
    m1, m2 = (_mu_tensor(m, d, dv) for m in mu)
    _check_two_cochain(c, r.v, m1, "mu1")
    _check_two_cochain(c, r.v, m2, "mu2")
    space = HomSpace(d + dv, direct_sum_twist(c.alpha, r.v.twist))
    total = CompatibleHomLts(
        space,
        TriBracket(semidirect_bracket(c.b1.c, r.theta1, m1)),
        TriBracket(semidirect_bracket(c.b2.c, r.theta2, m2)),
    )
    i, p = _canonical_maps(d, dv)
    return AbelianExtension(total, i, p, c, r.v)


def _twist_compatible_section(twist_hat: np.ndarray, alpha: np.ndarray, p: np.ndarray) -> np.ndarray | None:
    """σ with p σ = id and α̂ σ = σ α, free variables zero; None if there is none."""
    big, d = twist_hat.shape[0], alpha.shape[0]
    nvar = big * d  # sigma[r, k] -> r * d + k
    rows, rhs = [], []
    for a in range(d):
        for k in range(d):
            row = zeros(nvar)
            for r_ in range(big):
                row[r_ * d + k] = p[a, r_]
            rows.append(row)
            rhs.append(1 if a == k else 0)
    for r_ in range(big):
        for k in range(d):
            row = zeros(nvar)
            for s in range(big):
                row[s * d + k] += twist_hat[r_, s]
            for j in range(d):
                row[r_ * d + j] -= alpha[j, k]
            rows.append(row)
            rhs.append(0)
    sol = solve(np.array(rows, dtype=object), rhs)
    return None if sol is None else sol.reshape(big, d)


def _transport(t: np.ndarray, m: np.ndarray, m_inv: np.ndarray) -> np.ndarray:
    # c'(x, y, z) = m^{-1} [m x, m y, m z]
    return canonicalize(apply_out(apply_ins(t, m, (0, 1, 2)), m_inv))


def _matrix_inverse(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    red, piv = rref(np.concatenate([m, identity(n)], axis=1))
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return red[:, n:]


def from_presentation(
    total: CompatibleHomLts, inclusion, projection, base: CompatibleHomLts, fiber: HomSpace
) -> AbelianExtension:
    """Normalize an extension given in arbitrary coordinates into split coordinates.

    A twist-compatible complement of V is chosen by deterministic elimination.
    """
    i = _as_matrix(inclusion)
    p = _as_matrix(projection)
    d, dv = base.dim, fiber.dim
    if i.shape != (total.dim, dv) or p.shape != (d, total.dim) or total.dim != d + dv:
        raise ValueError("inclusion / projection shapes do not match the spaces")
    pre = _presentation_report(total, i, p, base, fiber)
    if not pre:
        raise ValueError(f"not an abelian extension: failing {pre.failed_axioms()}")
    s0 = _twist_compatible_section(total.alpha, base.alpha, p)
    if s0 is None:
        raise ValueError("no section commutes with the twists; cannot split")
    t = np.concatenate([s0, i], axis=1)
    t_inv = _matrix_inverse(t)
    space = HomSpace(d + dv, _transport_twist(total.alpha, t, t_inv))
    new = CompatibleHomLts(
        space, TriBracket(_transport(total.b1.c, t, t_inv)), TriBracket(_transport(total.b2.c, t, t_inv))
    )
    ci, cp = _canonical_maps(d, dv)
    return AbelianExtension(new, ci, cp, base, fiber)


def _transport_twist(a: np.ndarray, t: np.ndarray, t_inv: np.ndarray) -> np.ndarray:
    return canonicalize(t_inv @ a @ t)


def _presentation_report(total, i, p, base, fiber, limit: int = DEFAULT_WITNESS_LIMIT) -> AxiomReport:
    d, dv = base.dim, fiber.dim
    rep = AxiomReport()
    rep.record("exactness:p.i=0", p @ i, zeros(d, dv), 1, limit)
    flags = np.array([rank(i) == dv, rank(p) == d], dtype=object)
    rep.record("exactness:ranks", flags, np.array([True, True], dtype=object), 1, limit)
    rep.record("twist:inclusion", total.alpha @ i, i @ fiber.twist, 1, limit)
    rep.record("twist:projection", p @ total.alpha, base.alpha @ p, 1, limit)
    for k, (bt, bb) in enumerate(zip(total.brackets, base.brackets), start=1):
        ideal = apply_ins(bt.c, i, (0, 1))
        rep.record(f"abelian-ideal:bracket{k}", ideal, np.zeros_like(ideal), 1, limit)
        hom = apply_out(bt.c, p) - apply_ins(bb.c, p, (0, 1, 2))
        rep.record(f"projection-homomorphism:bracket{k}", hom, np.zeros_like(hom), 1, limit)
    return rep


def extension_report(e: AbelianExtension, witness_limit: int = DEFAULT_WITNESS_LIMIT) -> AxiomReport:
    """All structural invariants, plus the compatible Hom-Lts axioms of the total space."""
    rep = _presentation_report(e.total, e.inclusion, e.projection, e.base, e.fiber, witness_limit)
    rep.extend(verify_compatible(e.total, witness_limit), "total:")
    return rep


def _section_matrix(e: AbelianExtension, s: Section | np.ndarray | None) -> np.ndarray:
    if s is None:
        return canonical_section(e).sigma
    sigma = s.sigma if isinstance(s, Section) else _as_matrix(s)
    if sigma.shape != (e.d + e.dv, e.d):
        raise ValueError(f"section must be {e.d + e.dv}x{e.d}, got {sigma.shape}")
    if np.any(e.projection @ sigma != identity(e.d)):
        raise ValueError("invalid section: p o sigma is not the identity")
    return sigma


def canonical_section(e: AbelianExtension) -> Section:
    """σ(a) = (a, 0) when it commutes with the twists, else the first twist-compatible section."""
    sigma = np.concatenate([identity(e.d), zeros(e.dv, e.d)], axis=0)
    if np.all(e.total.alpha @ sigma == sigma @ e.base.alpha):
        return Section(sigma)
    s0 = _twist_compatible_section(e.total.alpha, e.base.alpha, e.projection)
    if s0 is None:
        raise ValueError("no section commutes with the twists")
    return Section(s0)


def induced_representation(e: AbelianExtension, s: Section | None = None) -> CompatibleRepresentation:
    """θ^i(a, b)(u) = [u, σa, σb]^i; independent of the section."""
    sigma = _section_matrix(e, s)
    d = e.d
    thetas = []
    for b in e.total.brackets:
        # x[w, a, b, out] = [i e_w, σ e_a, σ e_b]
        x = apply_ins(apply_ins(b.c, e.inclusion, (0,)), sigma, (1, 2))
        if np.any(x[..., :d] != 0):
            raise ValueError("V is not an ideal of the total space")
        thetas.append(np.einsum("wabv->abvw", x[..., d:]))
    return CompatibleRepresentation(e.base.space, e.fiber, thetas[0], thetas[1])


def extract_cocycle(e: AbelianExtension, s: Section | None = None) -> tuple[Cochain, Cochain]:
    """μ_i(a, b, c) = [σa, σb, σc]^i - σ[a, b, c]^i.

    The section must commute with the twists, otherwise the result is not an
    equivariant cochain and an error is raised.
    """
    sigma = _section_matrix(e, s)
    if np.any(e.total.alpha @ sigma != sigma @ e.base.alpha):
        raise ValueError("section does not commute with the twists")
    d = e.d
    out = []
    for bt, bb in zip(e.total.brackets, e.base.brackets):
        x = apply_ins(bt.c, sigma, (0, 1, 2)) - apply_out(bb.c, sigma)
        x = canonicalize(x)
        if np.any(x[..., :d] != 0):
            raise ValueError("projection is not a homomorphism for this section")
        out.append(Cochain(e.base.space, e.fiber, 2, x[..., d:], cyclic=True))
    return out[0], out[1]


def _cocycle_coords(cache: _DeltaCache, mu: Sequence, d: int, dv: int, name: str) -> np.ndarray:
    basis = cache.basis(2)
    try:
        coords = np.concatenate([basis.coordinates(_mu_tensor(m, d, dv)) for m in mu])
    except ValueError as exc:
        raise ValueError(f"{name} is not a pair of cyclic equivariant 2-cochains") from exc
    if np.any(cache.delta_c(2).dot(coords) != 0):
        raise ValueError(f"{name} is not a 2-cocycle")
    return coords


def are_cohomologous(c: CompatibleHomLts, r: CompatibleRepresentation, mu: Sequence, nu: Sequence) -> Cochain | None:
    """A 1-cochain ξ with δ_c ξ = μ - ν, or None when the classes differ."""
    cache = _DeltaCache(c, r, 3)
    d, dv = c.dim, r.v.dim
    mc = _cocycle_coords(cache, mu, d, dv, "mu")
    nc = _cocycle_coords(cache, nu, d, dv, "nu")
    sol = solve(cache.delta_c(1), canonicalize(mc - nc))
    if sol is None:
        return None
    return cache.basis(1).cochain(sol)


def equivalence_from_xi(e1: AbelianExtension, e2: AbelianExtension, xi) -> Equivalence:
    """ζ_ξ(a, u) = (a, ξ(a) + u) with its morphism and diagram checks."""
    if e1.d != e2.d or e1.dv != e2.dv:
        raise ValueError("extensions have different base or fiber dimensions")
    xi = _as_matrix(xi)
    d, dv = e1.d, e1.dv
    if xi.shape != (dv, d):
        raise ValueError(f"xi must be {dv}x{d}, got {xi.shape}")
    zeta = identity(d + dv)
    zeta[d:, :d] = xi
    rep = is_isomorphism(e1.total, e2.total, zeta)
    rep.record("diagram:inclusion", zeta @ e1.inclusion, e2.inclusion, 1, DEFAULT_WITNESS_LIMIT)
    rep.record("diagram:projection", e2.projection @ zeta, e1.projection, 1, DEFAULT_WITNESS_LIMIT)
    return Equivalence(canonicalize(zeta), rep)


def classify_extension(
    e: AbelianExtension, s: Section | None = None, report: CohomologyReport | None = None
) -> np.ndarray:
    """Coordinates in H² (for the induced representation) of the extension's class."""
    r = induced_representation(e, s)
    mu = extract_cocycle(e, s)
    report = report if report is not None else cohomology(e.base, r, 2)
    coords = np.concatenate([report.basis.coordinates(m.coeffs) for m in mu])
    return class_coordinates(report, coords)
