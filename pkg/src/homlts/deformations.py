"""Linear deformations π_i + tμ_i + t²ω_i of a compatible Hom-Lts.

The parameter t is a formal variable: every condition is checked coefficient
by coefficient in ℚ[t]. Two independent routes decide whether a pair of
t-brackets is a deformation:

* graded-bracket equations, one per nonzero power of t in
  [π_i(t), π_j(t)] = 0, evaluated with :func:`graded_bracket`;
* direct expansion of every compatible Hom-Lts axiom of the t-brackets.

They are computed separately and compared entry by entry.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._tensor import apply_in, apply_ins, apply_out
from .cochains import (
    Cochain,
    class_coordinates,
    coboundary,
    cochain_report,
    cohomology,
    graded_bracket,
)
from .core import (
    DEFAULT_WITNESS_LIMIT,
    AxiomReport,
    CompatibleHomLts,
    CompatibleRepresentation,
    TriBracket,
    _as_square,
    _cyclic_sum,
    _fundamental,
    adjoint_representation,
    is_nijenhuis,
)
from .linalg import canonicalize, rational, zeros

__all__ = [
    "LinearDeformation",
    "TPolynomialBracket",
    "EQUATIONS",
    "PRINTED_EQUATIONS",
    "check_deformation",
    "printed_equation_report",
    "infinitesimal_is_cocycle",
    "check_equivalence",
    "is_trivial_deformation",
    "trivial_deformation_from_nijenhuis",
    "deformation_class",
]

_NAMES = ("pi", "mu", "omega")


@dataclass(frozen=True, eq=False)
class LinearDeformation:
    mu1: TriBracket
    mu2: TriBracket
    omega1: TriBracket
    omega2: TriBracket

    @classmethod
    def zero(cls, dim: int) -> "LinearDeformation":
        z = TriBracket.zero(dim)
        return cls(z, z, z, z)

    @property
    def mu(self) -> tuple[TriBracket, TriBracket]:
        return (self.mu1, self.mu2)

    @property
    def omega(self) -> tuple[TriBracket, TriBracket]:
        return (self.omega1, self.omega2)

    def brackets(self, c: CompatibleHomLts) -> tuple["TPolynomialBracket", "TPolynomialBracket"]:
        return (
            TPolynomialBracket((c.b1.c, self.mu1.c, self.omega1.c)),
            TPolynomialBracket((c.b2.c, self.mu2.c, self.omega2.c)),
        )

    def __eq__(self, other):
        if not isinstance(other, LinearDeformation):
            return NotImplemented
        return (self.mu1, self.mu2, self.omega1, self.omega2) == (other.mu1, other.mu2, other.omega1, other.omega2)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class TPolynomialBracket:
    """Bracket tensors indexed by the power of t."""

    coeffs: tuple[np.ndarray, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(canonicalize(np.asarray(c, dtype=object)) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, t) -> TriBracket:
        t = rational(t)
        out = zeros(*self.coeffs[0].shape)
        for k, c in enumerate(self.coeffs):
            out = out + c * t**k
        return TriBracket(out)


def _validate(c: CompatibleHomLts, d: LinearDeformation) -> None:
    for name, b in zip(("mu1", "mu2", "omega1", "omega2"), (d.mu1, d.mu2, d.omega1, d.omega2)):
        if b.dim != c.dim:
            raise ValueError(f"{name} has dimension {b.dim}, expected {c.dim}")
        rep = cochain_report(Cochain(c.space, c.space, 2, b.c, cyclic=True), 1)
        if not rep:
            raise ValueError(f"{name} is not a cyclic equivariant 2-cochain: failing {rep.failed_axioms()}")


# ---------------------------------------------------------------------------
# graded-bracket equations

# (id, (i, j), power, [(coefficient, (left name, left index), (right name, right index))])
def _coefficient_terms(i: int, j: int, power: int):
    terms = []
    for r in range(3):
        s = power - r
        if 0 <= s <= 2:
            terms.append((1, (_NAMES[r], i), (_NAMES[s], j)))
    return terms


def _collect(terms):
    """Merge [X,Y] and [Y,X] (the bracket is symmetric on degree-2 cochains)."""
    merged: dict[tuple, int] = {}
    for k, x, y in terms:
        key = tuple(sorted((x, y), key=lambda z: (_NAMES.index(z[0]), z[1])))
        merged[key] = merged.get(key, 0) + k
    return [(k, x, y) for (x, y), k in merged.items()]


def _label(terms) -> str:
    parts = []
    for k, (xn, xi), (yn, yi) in terms:
        pre = "" if k == 1 else f"{k}"
        parts.append(f"{pre}[{xn}{xi},{yn}{yi}]")
    return "+".join(parts)


def _build_equations():
    out = []
    for i, j in ((1, 1), (1, 2), (2, 2)):
        for power in range(5):
            terms = _collect(_coefficient_terms(i, j, power))
            out.append((f"t^{power}:{_label(terms)}", (i, j), power, terms))
    return tuple(out)


EQUATIONS = _build_equations()
"""Coefficient of every power of t in [π_i(t), π_j(t)]; the t^0 rows concern the undeformed pair."""

PRINTED_EQUATIONS = (
    ("[pi1,mu1]", [(1, ("pi", 1), ("mu", 1))]),
    ("[pi1,omega1]+[mu1,mu1]", [(1, ("pi", 1), ("omega", 1)), (1, ("mu", 1), ("mu", 1))]),
    ("[mu1,omega1]", [(1, ("mu", 1), ("omega", 1))]),
    ("[omega1,omega1]", [(1, ("omega", 1), ("omega", 1))]),
    ("[omega1,omega2]", [(1, ("omega", 1), ("omega", 2))]),
    ("[pi1,mu2]+[mu1,pi2]", [(1, ("pi", 1), ("mu", 2)), (1, ("mu", 1), ("pi", 2))]),
    (
        "[pi1,omega2]+[omega1,pi2]+[mu1,mu2]",
        [(1, ("pi", 1), ("omega", 2)), (1, ("omega", 1), ("pi", 2)), (1, ("mu", 1), ("mu", 2))],
    ),
    ("[mu1,omega2]+[omega1,mu2]", [(1, ("mu", 1), ("omega", 2)), (1, ("omega", 1), ("mu", 2))]),
    ("[pi2,mu2]", [(1, ("pi", 2), ("mu", 2))]),
    ("[pi2,omega2]+[mu2,mu2]", [(1, ("pi", 2), ("omega", 2)), (1, ("mu", 2), ("mu", 2))]),
    ("[mu2,omega2]", [(1, ("mu", 2), ("omega", 2))]),
    ("[omega2,omega2]", [(1, ("omega", 2), ("omega", 2))]),
)
"""The list of twelve equations in its commonly printed form (kept for comparison)."""


class _Cochains:
    def __init__(self, c: CompatibleHomLts, d: LinearDeformation):
        self.space = c.space
        self.t = {
            ("pi", 1): c.b1.c,
            ("pi", 2): c.b2.c,
            ("mu", 1): d.mu1.c,
            ("mu", 2): d.mu2.c,
            ("omega", 1): d.omega1.c,
            ("omega", 2): d.omega2.c,
        }
        self._cache: dict = {}

    def bracket(self, x, y) -> np.ndarray:
        if (x, y) not in self._cache:
            px = Cochain(self.space, self.space, 2, self.t[x], cyclic=False)
            py = Cochain(self.space, self.space, 2, self.t[y], cyclic=False)
            self._cache[(x, y)] = graded_bracket(px, py).coeffs
        return self._cache[(x, y)]

    def evaluate(self, terms) -> np.ndarray:
        out = None
        for k, x, y in terms:
            v = self.bracket(x, y) * k
            out = v if out is None else out + v
        return canonicalize(out)


def _zero_record(rep: AxiomReport, name: str, t: np.ndarray, limit: int) -> None:
    rep.record(name, t, np.zeros_like(t), 1, limit)


# ---------------------------------------------------------------------------
# ℚ[t] expansion


def _poly_residuals(c: CompatibleHomLts, d: LinearDeformation) -> dict[str, list[np.ndarray]]:
    """Residual coefficient tensors (lhs - rhs) of every axiom, by power of t."""
    a = c.alpha
    p1, p2 = d.brackets(c)
    out: dict[str, list[np.ndarray]] = {}
    for idx, p in ((1, p1), (2, p2)):
        cs = p.coeffs
        out[f"bracket{idx}:multiplicativity"] = [apply_out(x, a) - apply_ins(x, a, (0, 1, 2)) for x in cs]
        out[f"bracket{idx}:Eq-2.1"] = [x + x.transpose(1, 0, 2, 3) for x in cs]
        out[f"bracket{idx}:Eq-2.2"] = [_cyclic_sum(x) for x in cs]
        fi = []
        for m in range(2 * p.degree + 1):
            acc = None
            for r in range(p.degree + 1):
                s = m - r
                if 0 <= s <= p.degree:
                    lhs, rhs = _fundamental(cs[r], cs[s], a)
                    acc = lhs - rhs if acc is None else acc + lhs - rhs
            fi.append(canonicalize(acc))
        out[f"bracket{idx}:Eq-2.3"] = fi
    mixed = []
    for m in range(5):
        acc = None
        for r in range(3):
            s = m - r
            if 0 <= s <= 2:
                l12, r12 = _fundamental(p1.coeffs[r], p2.coeffs[s], a)
                l21, r21 = _fundamental(p2.coeffs[r], p1.coeffs[s], a)
                v = l12 - r12 + l21 - r21
                acc = v if acc is None else acc + v
        mixed.append(canonicalize(acc))
    out["Eq-2.7"] = mixed
    return out


def _first_witness(t: np.ndarray):
    mask = np.any(t != 0, axis=-1)
    idx = np.argwhere(mask)
    return tuple(int(i) for i in idx[0]) if len(idx) else None


def check_deformation(
    c: CompatibleHomLts, d: LinearDeformation, witness_limit: int = DEFAULT_WITNESS_LIMIT
) -> AxiomReport:
    """Decide whether (π_i + tμ_i + t²ω_i) is a compatible Hom-Lts for all t.

    Records ``bracket:`` items (graded-bracket equations), ``poly:`` items
    (coefficients of every axiom in ℚ[t]) and ``agreement:`` items comparing
    the two routes on each coefficient of the fundamental identities.
    """
    _validate(c, d)
    rep = AxiomReport()
    cochains = _Cochains(c, d)
    bracket_values = {}
    for name, pair, power, terms in EQUATIONS:
        val = cochains.evaluate(terms)
        bracket_values[(pair, power)] = val
        _zero_record(rep, f"bracket:{name}", val, witness_limit)
    poly = _poly_residuals(c, d)
    for axiom, coeffs in poly.items():
        for m, t in enumerate(coeffs):
            _zero_record(rep, f"poly:{axiom}:t^{m}", t, witness_limit)
    # [π_i(t), π_i(t)] at t^m is -2 times the Eq-2.3 residual at t^m, and
    # [π_1(t), π_2(t)] is -1 times the Eq-2.7 residual, pointwise.
    for (pair, power), val in bracket_values.items():
        if pair == (1, 2):
            expected = -poly["Eq-2.7"][power]
        else:
            expected = -2 * poly[f"bracket{pair[0]}:Eq-2.3"][power]
        same = bool(np.all(canonicalize(expected) == val))
        rep.record(
            f"agreement:{pair[0]}{pair[1]}:t^{power}",
            np.array([same, _first_witness(val) == _first_witness(expected)], dtype=object),
            np.array([True, True], dtype=object),
            1,
            witness_limit,
        )
    return rep


def printed_equation_report(
    c: CompatibleHomLts, d: LinearDeformation, witness_limit: int = DEFAULT_WITNESS_LIMIT
) -> AxiomReport:
    """Evaluate the commonly printed list of twelve equations verbatim."""
    _validate(c, d)
    cochains = _Cochains(c, d)
    rep = AxiomReport()
    for name, terms in PRINTED_EQUATIONS:
        _zero_record(rep, f"printed:{name}", cochains.evaluate(terms), witness_limit)
    return rep


def infinitesimal_is_cocycle(
    c: CompatibleHomLts, r_adjoint: CompatibleRepresentation | None, mu: Sequence[TriBracket]
) -> bool:
    """δ_c(μ₁, μ₂) = 0 with adjoint coefficients."""
    r = r_adjoint if r_adjoint is not None else adjoint_representation(c)
    m1, m2 = (m.c if isinstance(m, TriBracket) else np.asarray(m, dtype=object) for m in mu)
    for name, m in (("mu1", m1), ("mu2", m2)):
        rep = cochain_report(Cochain(c.space, r.v, 2, m, cyclic=True), 1)
        if not rep:
            raise ValueError(f"{name} is not a cyclic equivariant 2-cochain: failing {rep.failed_axioms()}")
    a = c.alpha

    def delta(which, f):
        return coboundary(f, 2, c.brackets[which - 1].c, r.thetas[which - 1], a)

    parts = (delta(1, m1), delta(1, m2) + delta(2, m1), delta(2, m2))
    return all(not np.any(p != 0) for p in parts)


# ---------------------------------------------------------------------------
# equivalence


def _n_subsets(t: np.ndarray, n_mat: np.ndarray, k: int) -> np.ndarray:
    """Sum over k-element subsets S of input slots of t with N applied on S."""
    out = None
    for s in itertools.combinations(range(3), k):
        v = apply_ins(t, n_mat, s)
        out = v if out is None else out + v
    return out


def _equivalence_items(c: CompatibleHomLts, d: LinearDeformation, dp: LinearDeformation, n_mat: np.ndarray):
    """Per bracket: the explicit items Eq-4.4 to Eq-4.8 and the packaged t-coefficients, as (lhs, rhs)."""
    items = []
    for i in (1, 2):
        pi = c.brackets[i - 1].c
        mu, om = d.mu[i - 1].c, d.omega[i - 1].c
        mup, omp = dp.mu[i - 1].c, dp.omega[i - 1].c
        explicit = {
            "Eq-4.4": (apply_out(pi, n_mat) + mu, _n_subsets(pi, n_mat, 1) + mup),
            "Eq-4.5": (
                om + apply_out(mu, n_mat),
                _n_subsets(pi, n_mat, 2) + _n_subsets(mup, n_mat, 1) + omp,
            ),
            "Eq-4.6": (
                apply_out(om, n_mat),
                _n_subsets(pi, n_mat, 3) + _n_subsets(mup, n_mat, 2) + _n_subsets(omp, n_mat, 1),
            ),
            "Eq-4.7": (_n_subsets(mup, n_mat, 3) + _n_subsets(omp, n_mat, 2), np.zeros_like(pi)),
            "Eq-4.8": (_n_subsets(omp, n_mat, 3), np.zeros_like(pi)),
        }
        # N_t [a,b,c]_t = [N_t a, N_t b, N_t c]'_t coefficientwise
        lhs_c = [pi, apply_out(pi, n_mat) + mu, apply_out(mu, n_mat) + om, apply_out(om, n_mat)]
        primed = [pi, mup, omp]
        packaged = {}
        for k in range(6):
            lhs = lhs_c[k] if k < len(lhs_c) else np.zeros_like(pi)
            rhs = np.zeros_like(pi)
            for r, cp in enumerate(primed):
                s = k - r
                if 0 <= s <= 3:
                    rhs = rhs + (cp if s == 0 else _n_subsets(cp, n_mat, s))
            packaged[f"packaged:t^{k}"] = (lhs, rhs)
        items.append((i, explicit, packaged))
    return items


def check_equivalence(
    c: CompatibleHomLts,
    d: LinearDeformation,
    d_prime: LinearDeformation,
    n,
    witness_limit: int = DEFAULT_WITNESS_LIMIT,
) -> AxiomReport:
    """Equivalence via N_t = Id + tN, explicitly (Eq-4.3 to Eq-4.8) and as a packaged identity in ℚ[t]."""
    n_mat = _as_square(n, c.dim, "N")
    rep = AxiomReport()
    rep.record("Eq-4.3", c.alpha @ n_mat, n_mat @ c.alpha, 1, witness_limit)
    for i, explicit, packaged in _equivalence_items(c, d, d_prime, n_mat):
        for name, (lhs, rhs) in explicit.items():
            rep.record(f"bracket{i}:{name}", lhs, rhs, 1, witness_limit)
        for name, (lhs, rhs) in packaged.items():
            rep.record(f"bracket{i}:{name}", lhs, rhs, 1, witness_limit)
    return rep


def triviality_report(
    c: CompatibleHomLts, d: LinearDeformation, n, witness_limit: int = DEFAULT_WITNESS_LIMIT
) -> AxiomReport:
    """Equivalence to the undeformed pair via N (report items Eq-4.9 to Eq-4.12)."""
    n_mat = _as_square(n, c.dim, "N")
    zero = LinearDeformation.zero(c.dim)
    rep = AxiomReport()
    rep.record("Eq-4.9", c.alpha @ n_mat, n_mat @ c.alpha, 1, witness_limit)
    names = {"Eq-4.4": "Eq-4.10", "Eq-4.5": "Eq-4.11", "Eq-4.6": "Eq-4.12"}
    for i, explicit, _ in _equivalence_items(c, d, zero, n_mat):
        for old, new in names.items():
            lhs, rhs = explicit[old]
            rep.record(f"bracket{i}:{new}", lhs, rhs, 1, witness_limit)
    return rep


def is_trivial_deformation(c: CompatibleHomLts, d: LinearDeformation, n) -> bool:
    return triviality_report(c, d, n, 1).passed


def trivial_deformation_from_nijenhuis(c: CompatibleHomLts, n) -> LinearDeformation:
    """(μ_i, ω_i) generated by a Nijenhuis operator N."""
    n_mat = _as_square(n, c.dim, "N")
    rep = is_nijenhuis(c, n_mat, 1)
    if not rep:
        raise ValueError(f"N is not a Nijenhuis operator: failing {rep.failed_axioms()}")
    mus, omegas = [], []
    for b in c.brackets:
        mu = _n_subsets(b.c, n_mat, 1) - apply_out(b.c, n_mat)
        om = _n_subsets(b.c, n_mat, 2) - apply_out(mu, n_mat)
        mus.append(TriBracket(mu))
        omegas.append(TriBracket(om))
    return LinearDeformation(mus[0], mus[1], omegas[0], omegas[1])


def deformation_class(c: CompatibleHomLts, mu: Sequence[TriBracket], report=None) -> np.ndarray:
    """Coordinates in H² (adjoint coefficients) of the class of an infinitesimal."""
    r = adjoint_representation(c)
    if not infinitesimal_is_cocycle(c, r, mu):
        raise ValueError("infinitesimal is not a 2-cocycle")
    report = report if report is not None else cohomology(c, r, 2)
    coords = np.concatenate([report.basis.coordinates(m.c if isinstance(m, TriBracket) else m) for m in mu])
    return class_coordinates(report, coords)
